#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wstar/channels.hpp"
#include "wstar/rng.hpp"
#include "test_support.hpp"

using namespace wstar;
using wstar::testing::mat1;
using wstar::testing::mat2;
using wstar::testing::thrown_code;

namespace {

Channel identity_channel(const Signature& sig) {
  std::vector<std::vector<std::vector<Matrix>>> components(
      static_cast<std::size_t>(sig.blocks()));
  for (int k = 0; k < sig.blocks(); ++k) {
    components[static_cast<std::size_t>(k)].resize(
        static_cast<std::size_t>(sig.blocks()));
    components[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)]
        .push_back(Matrix::Identity(sig.dim(k), sig.dim(k)));
  }
  return make_channel(sig, sig, std::move(components));
}

/// Sends a qubit to |0><0| regardless of input; trace preserving but the
/// image sits on the boundary of the state space.
Channel collapse_channel() {
  return make_channel(Signature({2}), Signature({2}),
                      {{{mat2(1, 0, 0, 0), mat2(0, 1, 0, 0)}}});
}

}  // namespace

TEST_CASE("make_channel validation") {
  const Signature q({2});
  CHECK(thrown_code([&] { make_channel(q, q, {}); }) ==
        ErrorCode::ShapeMismatch);
  CHECK(thrown_code([&] {
          make_channel(q, q, {{{mat1(1.0)}}});
        }) == ErrorCode::ShapeMismatch);
  // A uniformly damped Kraus family is no longer trace preserving.
  CHECK(thrown_code([&] {
          make_channel(q, q, {{{0.9 * mat2(1, 0, 0, 1)}}});
        }) == ErrorCode::NotTracePreserving);
  CHECK(thrown_code([&] {
          const double nan = std::nan("");
          make_channel(q, q, {{{mat2(nan, 0, 0, 1)}}});
        }) == ErrorCode::InvalidArgument);
}

TEST_CASE("identity and unitary channels") {
  const Signature sig({1, 2});
  const Channel id = identity_channel(sig);
  const FaithfulState rho = random_faithful_state(sig, 5);
  const FaithfulState img = apply(id, rho);
  CHECK(max_abs(img.as_element() - rho.as_element()) < 1e-14);
  CHECK(is_faithful(id));

  Rng rng(11);
  const Matrix u = random_unitary(rng, 2);
  const Channel rot =
      make_channel(Signature({2}), Signature({2}), {{{u}}});
  const FaithfulState qubit = random_faithful_state(Signature({2}), 6);
  const FaithfulState rotated = apply(rot, qubit);
  CHECK((rotated.block(0) - u * qubit.block(0) * u.adjoint())
            .cwiseAbs()
            .maxCoeff() < 1e-13);
  CHECK(is_faithful(rot));
}

TEST_CASE("collapse channel loses faithfulness") {
  const Channel ch = collapse_channel();
  CHECK_FALSE(is_faithful(ch));
  const FaithfulState rho = random_faithful_state(Signature({2}), 8);
  CHECK(thrown_code([&] { apply(ch, rho); }) == ErrorCode::NotFaithfulImage);
}

TEST_CASE("block restriction channel") {
  // [2] -> [1,1]: keep the diagonal, one 1x2 Kraus per target block.
  Matrix top(1, 2), bottom(1, 2);
  top << 1.0, 0.0;
  bottom << 0.0, 1.0;
  const Channel diag = make_channel(Signature({2}), Signature({1, 1}),
                                    {{{top}, {bottom}}});
  const FaithfulState rho = random_faithful_state(Signature({2}), 13);
  const FaithfulState img = apply(diag, rho);
  CHECK(img.block(0)(0, 0).real() ==
        doctest::Approx(rho.block(0)(0, 0).real()));
  CHECK(img.block(1)(0, 0).real() ==
        doctest::Approx(rho.block(0)(1, 1).real()));
  CHECK(is_faithful(diag));

  // Tangent pushforward keeps the zero-total-trace constraint.
  const TangentVector v = random_tangent(Signature({2}), 14);
  const TangentVector pushed = apply(diag, v);
  CHECK(std::abs(total_trace(pushed.as_element())) < 1e-13);
}

TEST_CASE("heisenberg dual") {
  const Signature src({2}), tgt({1, 1});
  Matrix top(1, 2), bottom(1, 2);
  top << 1.0, 0.0;
  bottom << 0.0, 1.0;
  const Channel ch = make_channel(src, tgt, {{{top}, {bottom}}});
  // Unital: the dual of a trace-preserving map fixes the identity.
  CHECK(max_abs(heisenberg_dual(ch, identity(tgt)) - identity(src)) < 1e-14);
  // Adjoint property: Tr(x Phi(rho)) = Tr(Phi^*(x) rho).
  const FaithfulState rho = random_faithful_state(src, 3);
  Rng rng(4);
  const AlgebraElement x(tgt, {gaussian_complex_matrix(rng, 1, 1),
                               gaussian_complex_matrix(rng, 1, 1)});
  const Complex lhs = trace_pair(x, apply(ch, rho).as_element());
  const Complex rhs = trace_pair(heisenberg_dual(ch, x), rho.as_element());
  CHECK(std::abs(lhs - rhs) < 1e-13);
}

TEST_CASE("composition") {
  const Signature sig({2});
  Rng rng(21);
  const Channel c1 = random_channel(sig, Signature({1, 1}), 2, rng.next());
  const Channel c2 = random_channel(Signature({1, 1}), sig, 2, rng.next());
  const Channel both = compose(c2, c1);
  CHECK(both.source() == sig);
  CHECK(both.target() == sig);
  const FaithfulState rho = random_faithful_state(sig, 22);
  const FaithfulState two_step = apply(c2, apply(c1, rho));
  const FaithfulState one_step = apply(both, rho);
  CHECK(max_abs(two_step.as_element() - one_step.as_element()) < 1e-12);
  CHECK(thrown_code([&] { compose(c1, c1); }) == ErrorCode::SignatureMismatch);
}

TEST_CASE("markov_channel") {
  Eigen::MatrixXd s(2, 2);
  s << 0.9, 0.2, 0.1, 0.8;
  const Channel ch = markov_channel(s);
  CHECK(ch.source() == Signature({1, 1}));
  const FaithfulState p = from_probability_vector({0.5, 0.5});
  const FaithfulState img = apply(ch, p);
  CHECK(img.block(0)(0, 0).real() == doctest::Approx(0.55));
  CHECK(img.block(1)(0, 0).real() == doctest::Approx(0.45));

  // Composition of Markov channels is the product of their matrices.
  Eigen::MatrixXd s2(3, 2);
  s2 << 0.5, 0.1, 0.25, 0.6, 0.25, 0.3;
  const Channel ch2 = markov_channel(s2);
  const FaithfulState direct = apply(markov_channel(Eigen::MatrixXd(s2 * s)), p);
  const FaithfulState stepped = apply(compose(ch2, ch), p);
  CHECK(max_abs(direct.as_element() - stepped.as_element()) < 1e-14);

  Eigen::MatrixXd bad = s;
  bad(0, 0) = -0.1;
  CHECK(thrown_code([&] { markov_channel(bad); }) == ErrorCode::NotStochastic);
  bad = s;
  bad(0, 0) = 0.95;
  CHECK(thrown_code([&] { markov_channel(bad); }) == ErrorCode::NotStochastic);
}

TEST_CASE("classical congruent embedding") {
  const EmbeddingPair pair =
      congruent_embedding_classical(2, {0, 1, 1}, {1.0, 0.5, 0.5});
  const FaithfulState p = from_probability_vector({0.4, 0.6});
  const FaithfulState img = apply(pair.embed, p);
  CHECK(img.block(0)(0, 0).real() == doctest::Approx(0.4));
  CHECK(img.block(1)(0, 0).real() == doctest::Approx(0.3));
  CHECK(img.block(2)(0, 0).real() == doctest::Approx(0.3));
  const FaithfulState back = apply(pair.left_inverse, img);
  CHECK(max_abs(back.as_element() - p.as_element()) < 1e-14);

  CHECK(thrown_code([] {
          congruent_embedding_classical(2, {0, 0, 0}, {0.5, 0.25, 0.25});
        }) == ErrorCode::InvalidPartition);
  CHECK(thrown_code([] {
          congruent_embedding_classical(2, {0, 1, 1}, {1.0, 0.6, 0.6});
        }) == ErrorCode::InvalidWeights);
  CHECK(thrown_code([] {
          congruent_embedding_classical(2, {0, 1, 2}, {1.0, 1.0, 1.0});
        }) == ErrorCode::InvalidPartition);
}

TEST_CASE("quantum congruent embedding") {
  const int n = 2, d = 2;
  const FaithfulState anc =
      make_state(Signature({d}), {mat2(0.5, 0, 0, 0.5)});

  SUBCASE("identity unitary tensors with the ancilla") {
    const EmbeddingPair pair =
        congruent_embedding_quantum(Matrix::Identity(n * d, n * d), anc);
    const FaithfulState rho = random_faithful_state(Signature({n}), 31);
    const FaithfulState img = apply(pair.embed, rho);
    // Expect rho (x) sigma with tensor index (i, b) -> i*d + b.
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int b = 0; b < d; ++b)
          for (int c = 0; c < d; ++c)
            CHECK(std::abs(img.block(0)(i * d + b, j * d + c) -
                           rho.block(0)(i, j) * anc.block(0)(b, c)) < 1e-13);
    const FaithfulState back = apply(pair.left_inverse, img);
    CHECK(max_abs(back.as_element() - rho.as_element()) < 1e-12);
  }

  SUBCASE("random unitary still inverts") {
    Rng rng(77);
    const Matrix u = random_unitary(rng, n * d);
    const FaithfulState anc2 = random_faithful_state(Signature({d}), 78);
    const EmbeddingPair pair = congruent_embedding_quantum(u, anc2);
    const FaithfulState rho = random_faithful_state(Signature({n}), 79);
    const FaithfulState round =
        apply(pair.left_inverse, apply(pair.embed, rho));
    CHECK(max_abs(round.as_element() - rho.as_element()) < 1e-12);
  }

  SUBCASE("rejects non-unitaries and bad shapes") {
    CHECK(thrown_code([&] {
            congruent_embedding_quantum(2.0 * Matrix::Identity(4, 4), anc);
          }) == ErrorCode::NotUnitary);
    CHECK(thrown_code([&] {
            congruent_embedding_quantum(Matrix::Identity(3, 3), anc);
          }) == ErrorCode::ShapeMismatch);
  }
}

TEST_CASE("random_channel") {
  const Signature src({1, 2}), tgt({2});
  const Channel a = random_channel(src, tgt, 2, 55);
  const Channel b = random_channel(src, tgt, 2, 55);
  // Deterministic in the seed.
  for (int k = 0; k < src.blocks(); ++k)
    for (int l = 0; l < tgt.blocks(); ++l) {
      REQUIRE(a.kraus(k, l).size() == b.kraus(k, l).size());
      for (std::size_t i = 0; i < a.kraus(k, l).size(); ++i)
        CHECK((a.kraus(k, l)[i] - b.kraus(k, l)[i]).cwiseAbs().maxCoeff() ==
              0.0);
    }
  CHECK(a.kraus(0, 0).size() == 2);
  CHECK(thrown_code([&] { random_channel(src, tgt, 0, 1); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("transfer matrix, Choi matrix, Kraus extraction") {
  SUBCASE("identity map") {
    const Channel id = identity_channel(Signature({2}));
    const Matrix t = component_transfer_matrix(id, 0, 0);
    CHECK((t - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-15);
    const Matrix choi = choi_from_transfer(t, 2, 2);
    const auto kraus = kraus_from_choi(choi, 2, 2);
    REQUIRE(kraus.size() == 1);
    // Recovered Kraus acts as the identity (global phase aside).
    Rng rng(1);
    const Matrix x = gaussian_complex_matrix(rng, 2, 2);
    CHECK((kraus[0] * x * kraus[0].adjoint() - x).cwiseAbs().maxCoeff() <
          1e-12);
  }

  SUBCASE("transfer matrix reproduces the channel action") {
    const Channel ch = random_channel(Signature({2}), Signature({3}), 2, 91);
    const Matrix t = component_transfer_matrix(ch, 0, 0);
    Rng rng(92);
    const Matrix x = gaussian_complex_matrix(rng, 2, 2);
    Matrix direct = Matrix::Zero(3, 3);
    for (const Matrix& k : ch.kraus(0, 0)) direct += k * x * k.adjoint();
    const Eigen::VectorXcd vx =
        Eigen::Map<const Eigen::VectorXcd>(x.data(), 4);
    const Eigen::VectorXcd vy = t * vx;
    const Matrix lifted = Eigen::Map<const Matrix>(vy.data(), 3, 3);
    CHECK((lifted - direct).cwiseAbs().maxCoeff() < 1e-12);
  }

  SUBCASE("Kraus roundtrip through the Choi matrix") {
    const Channel ch = random_channel(Signature({2}), Signature({2}), 3, 93);
    const Matrix t = component_transfer_matrix(ch, 0, 0);
    const auto kraus = kraus_from_choi(choi_from_transfer(t, 2, 2), 2, 2);
    Rng rng(94);
    const Matrix x = gaussian_complex_matrix(rng, 2, 2);
    Matrix direct = Matrix::Zero(2, 2);
    for (const Matrix& k : ch.kraus(0, 0)) direct += k * x * k.adjoint();
    Matrix rebuilt = Matrix::Zero(2, 2);
    for (const Matrix& k : kraus) rebuilt += k * x * k.adjoint();
    CHECK((rebuilt - direct).cwiseAbs().maxCoeff() < 1e-11);
  }

  SUBCASE("transpose map is not completely positive") {
    // vec(rho^T)[r + s*2] = vec(rho)[s + r*2]: a permutation transfer matrix.
    Matrix t = Matrix::Zero(4, 4);
    for (int r = 0; r < 2; ++r)
      for (int s = 0; s < 2; ++s) t(r + s * 2, s + r * 2) = 1.0;
    const Matrix choi = choi_from_transfer(t, 2, 2);
    CHECK(thrown_code([&] { kraus_from_choi(choi, 2, 2); }) ==
          ErrorCode::NotCompletelyPositive);
  }
}
