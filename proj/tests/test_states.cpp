#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wstar/rng.hpp"
#include "wstar/states.hpp"
#include "test_support.hpp"

using namespace wstar;
using wstar::testing::mat1;
using wstar::testing::mat2;
using wstar::testing::thrown_code;

TEST_CASE("make_state validates and renormalizes") {
  const Signature sig({2});

  SUBCASE("accepts and stores eigendecomposition descending") {
    const FaithfulState rho = make_state(sig, {mat2(0.25, 0, 0, 0.75)});
    CHECK(rho.eigenvalues(0)(0) == doctest::Approx(0.75));
    CHECK(rho.eigenvalues(0)(1) == doctest::Approx(0.25));
    // Eigendecomposition reconstructs the block.
    const Matrix rebuilt = rho.eigenvectors(0) *
                           rho.eigenvalues(0).cast<Complex>().asDiagonal() *
                           rho.eigenvectors(0).adjoint();
    CHECK((rebuilt - rho.block(0)).cwiseAbs().maxCoeff() < 1e-14);
  }

  SUBCASE("renormalizes a trace inside the tolerance window") {
    const double eps = 5e-10;
    const FaithfulState rho =
        make_state(sig, {mat2(0.5 + eps, 0, 0, 0.5)});
    CHECK(std::abs(total_trace(rho.as_element()).real() - 1.0) < 1e-12);
  }

  SUBCASE("rejections") {
    CHECK(thrown_code([&] {
            make_state(sig, {mat2(0.5, 0.1, 0.2, 0.5)});
          }) == ErrorCode::NotHermitian);
    CHECK(thrown_code([&] {
            make_state(sig, {mat2(0.4, 0, 0, 0.5)});
          }) == ErrorCode::NotNormalized);
    CHECK(thrown_code([&] {
            make_state(sig, {mat2(1e-10, 0, 0, 1.0 - 1e-10)});
          }) == ErrorCode::NotFaithful);
    CHECK(thrown_code([&] {
            make_state(sig, {mat2(0.5, 0, 0, 0.5)}, -1.0);
          }) == ErrorCode::InvalidArgument);
    // Not positive at all: one negative eigenvalue.
    CHECK(thrown_code([&] {
            make_state(sig, {mat2(1.2, 0, 0, -0.2)});
          }) == ErrorCode::NotFaithful);
  }
}

TEST_CASE("from_probability_vector") {
  const FaithfulState rho = from_probability_vector({0.2, 0.3, 0.5});
  CHECK(rho.signature() == Signature({1, 1, 1}));
  CHECK(rho.block(1)(0, 0).real() == doctest::Approx(0.3));
  CHECK(rho.min_eigenvalue() == doctest::Approx(0.2));
  CHECK(thrown_code([] { from_probability_vector({0.5, 0.5 - 1e-10, 1e-10}); })
        == ErrorCode::NotFaithful);
  CHECK(thrown_code([] { from_probability_vector({}); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("random_faithful_state") {
  const Signature sig({1, 2});
  const FaithfulState a = random_faithful_state(sig, 42);
  const FaithfulState b = random_faithful_state(sig, 42);
  const FaithfulState c = random_faithful_state(sig, 43);
  CHECK(std::abs(total_trace(a.as_element()).real() - 1.0) < 1e-12);
  CHECK(a.min_eigenvalue() > a.floor());
  for (int i = 0; i < sig.blocks(); ++i)
    CHECK((a.block(i) - b.block(i)).cwiseAbs().maxCoeff() == 0.0);
  CHECK(max_abs(a.as_element() - c.as_element()) > 1e-6);

  CHECK(thrown_code([&] { random_faithful_state(sig, 1, 0.5); }) ==
        ErrorCode::InvalidArgument);
  CHECK(thrown_code([&] { random_faithful_state(sig, 1, 0.0); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("gns_inner") {
  const Signature sig({2});
  const FaithfulState rho = make_state(sig, {mat2(0.75, 0, 0, 0.25)});
  const AlgebraElement x(sig, {mat2(0, 1, 0, 0)});
  CHECK(gns_inner(rho, x, x).real() == doctest::Approx(0.25));

  Rng rng(5);
  const AlgebraElement y(sig, {gaussian_complex_matrix(rng, 2, 2)});
  const AlgebraElement z(sig, {gaussian_complex_matrix(rng, 2, 2)});
  // Conjugate symmetry and positivity.
  CHECK(std::abs(gns_inner(rho, y, z) - std::conj(gns_inner(rho, z, y))) <
        1e-12);
  CHECK(gns_inner(rho, y, y).real() > 0.0);
  CHECK(std::abs(gns_inner(rho, y, y).imag()) < 1e-14);
}

TEST_CASE("tangent vector validation") {
  const Signature sig({1, 1});
  CHECK(thrown_code([&] {
          TangentVector(sig, {mat1(0.5), mat1(0.5)});
        }) == ErrorCode::NotTangent);
  CHECK(thrown_code([&] {
          TangentVector(Signature({2}), {mat2(0, 1, 0, 0)});
        }) == ErrorCode::NotTangent);
  // Per-block traces may be nonzero as long as the total vanishes.
  const TangentVector ok(sig, {mat1(0.5), mat1(-0.5)});
  CHECK(ok.block(0)(0, 0) == Complex(0.5));
  const TangentVector z = TangentVector::zero(sig);
  CHECK(max_abs(z.as_element()) == 0.0);
}

TEST_CASE("tangent basis is orthonormal and complete") {
  for (const Signature& sig :
       {Signature({2}), Signature({3}), Signature({1, 2}), Signature({2, 2}),
        Signature({1, 1, 1})}) {
    const auto basis = tangent_basis(sig);
    REQUIRE(static_cast<int>(basis.size()) == sig.tangent_dim());
    for (std::size_t k = 0; k < basis.size(); ++k) {
      CHECK(std::abs(total_trace(basis[k].as_element())) < 1e-14);
      for (std::size_t l = 0; l < basis.size(); ++l) {
        const Complex pair =
            trace_pair(basis[k].as_element(), basis[l].as_element());
        CHECK(std::abs(pair - (k == l ? 1.0 : 0.0)) < 1e-14);
      }
    }
  }
}

TEST_CASE("tangent basis order on a qubit") {
  const auto basis = tangent_basis(Signature({2}));
  REQUIRE(basis.size() == 3);
  const double s = 1.0 / std::sqrt(2.0);
  // Symmetric off-diagonal, antisymmetric off-diagonal, then diagonal.
  CHECK(basis[0].block(0)(0, 1) == Complex(s));
  CHECK(basis[1].block(0)(0, 1) == Complex(0, -s));
  CHECK(basis[2].block(0)(0, 0) == Complex(s));
  CHECK(basis[2].block(0)(1, 1) == Complex(-s));
}

TEST_CASE("random_tangent") {
  const Signature sig({1, 2});
  const TangentVector u = random_tangent(sig, 7);
  const TangentVector v = random_tangent(sig, 7);
  CHECK(is_hermitian(u.as_element()));
  CHECK(std::abs(total_trace(u.as_element())) < 1e-13);
  CHECK(max_abs(u.as_element() - v.as_element()) == 0.0);
}

TEST_CASE("anticommutator_solve on a diagonal state") {
  const Signature sig({2});
  const FaithfulState rho = make_state(sig, {mat2(0.25, 0, 0, 0.75)});

  const TangentVector diag(sig, {mat2(0.25, 0, 0, -0.25)});
  const AlgebraElement v = anticommutator_solve(rho, diag);
  CHECK(v.block(0)(0, 0).real() == doctest::Approx(1.0));
  CHECK(v.block(0)(1, 1).real() == doctest::Approx(-1.0 / 3.0));

  const TangentVector off(sig, {mat2(0, 0.5, 0.5, 0)});
  const AlgebraElement w = anticommutator_solve(rho, off);
  CHECK(w.block(0)(0, 1).real() == doctest::Approx(1.0));
}

TEST_CASE("anticommutator_solve inverts the anticommutator") {
  for (const Signature& sig : {Signature({3}), Signature({1, 2})}) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const FaithfulState rho = random_faithful_state(sig, seed);
      const TangentVector a = random_tangent(sig, seed + 100);
      const AlgebraElement v = anticommutator_solve(rho, a);
      const AlgebraElement rebuilt =
          0.5 * (multiply(rho.as_element(), v) + multiply(v, rho.as_element()));
      CHECK(max_abs(rebuilt - a.as_element()) < 1e-10);
      // v is a valid GNS-side coordinate: self-adjoint, orthogonal to rho.
      CHECK(is_hermitian(v));
      CHECK(std::abs(trace_pair(v, rho.as_element())) < 1e-12);
    }
  }
}
