#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "wstar/algebra.hpp"
#include "wstar/rng.hpp"
#include "test_support.hpp"

using namespace wstar;
using wstar::testing::mat1;
using wstar::testing::mat2;
using wstar::testing::thrown_code;

TEST_CASE("signature parsing") {
  CHECK(Signature::parse("2").dims() == std::vector<int>{2});
  CHECK(Signature::parse("1,2").dims() == std::vector<int>{1, 2});
  CHECK(Signature::parse(" 1 , 2 ").dims() == std::vector<int>{1, 2});
  CHECK(Signature::parse("3,3,3").blocks() == 3);

  CHECK(thrown_code([] { Signature::parse(""); }) == ErrorCode::ParseError);
  CHECK(thrown_code([] { Signature::parse("a"); }) == ErrorCode::ParseError);
  CHECK(thrown_code([] { Signature::parse("2,"); }) == ErrorCode::ParseError);
  CHECK(thrown_code([] { Signature::parse("2,x"); }) == ErrorCode::ParseError);
  CHECK(thrown_code([] { Signature::parse("0"); }) == ErrorCode::ParseError);
  CHECK(thrown_code([] { Signature::parse("-1"); }) == ErrorCode::ParseError);
  CHECK(thrown_code([] { Signature::parse("2.5"); }) == ErrorCode::ParseError);
}

TEST_CASE("signature dimensions") {
  const Signature sig({1, 2, 3});
  CHECK(sig.blocks() == 3);
  CHECK(sig.total_matrix_dim() == 6);
  CHECK(sig.ambient_dim() == 14);
  CHECK(sig.tangent_dim() == 13);
  CHECK(sig.to_string() == "1,2,3");
  CHECK_FALSE(sig.commutative());
  CHECK(Signature({1, 1, 1}).commutative());
  CHECK(Signature({2}).tangent_dim() == 3);

  CHECK(thrown_code([] { Signature(std::vector<int>{}); }) ==
        ErrorCode::InvalidArgument);
  CHECK(thrown_code([] { Signature({2, 0}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("element construction validates shapes") {
  const Signature sig({1, 2});
  CHECK(thrown_code([&] {
          AlgebraElement(sig, {mat1(1.0)});
        }) == ErrorCode::ShapeMismatch);
  CHECK(thrown_code([&] {
          AlgebraElement(sig, {mat1(1.0), mat1(1.0)});
        }) == ErrorCode::ShapeMismatch);
  CHECK(thrown_code([&] {
          Matrix rect(1, 2);
          rect << 1.0, 2.0;
          AlgebraElement(Signature({1}), {rect});
        }) == ErrorCode::ShapeMismatch);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(thrown_code([&] {
          AlgebraElement(Signature({1}), {mat1(inf)});
        }) == ErrorCode::InvalidArgument);

  const AlgebraElement ok(sig, {mat1(2.0), mat2(1, 0, 0, 1)});
  CHECK(ok.block(0)(0, 0) == Complex(2.0));
  CHECK(ok.signature() == sig);
}

TEST_CASE("identity, adjoint, multiply, traces") {
  const Signature sig({1, 2});
  const AlgebraElement id = identity(sig);
  CHECK(total_trace(id) == Complex(3.0));
  CHECK(trace_pair(id, id) == Complex(3.0));

  const Complex i(0.0, 1.0);
  const AlgebraElement x(sig, {mat1(2.0), mat2(0.0, i, 0.0, 1.0)});
  const AlgebraElement xa = adjoint(x);
  CHECK(xa.block(1)(1, 0) == -i);
  CHECK(xa.block(1)(0, 1) == Complex(0.0));

  const AlgebraElement a(Signature({2}), {mat2(1, 0, 0, 2)});
  const AlgebraElement b(Signature({2}), {mat2(3, 0, 0, 4)});
  CHECK(trace_pair(a, b) == Complex(11.0));
  CHECK(multiply(a, b).block(0)(1, 1) == Complex(8.0));

  CHECK(thrown_code([&] { multiply(x, a); }) == ErrorCode::SignatureMismatch);
  CHECK(thrown_code([&] { trace_pair(x, a); }) == ErrorCode::SignatureMismatch);
}

TEST_CASE("arithmetic operators") {
  const Signature sig({2});
  AlgebraElement x(sig, {mat2(1, 0, 0, 1)});
  const AlgebraElement y(sig, {mat2(0, 1, 1, 0)});
  x += y;
  CHECK(x.block(0)(0, 1) == Complex(1.0));
  x -= y;
  x *= Complex(3.0);
  CHECK(x.block(0)(0, 0) == Complex(3.0));
  const AlgebraElement z = 2.0 * (x + y) - y;
  CHECK(z.block(0)(0, 0) == Complex(6.0));
  CHECK(z.block(0)(0, 1) == Complex(1.0));
}

TEST_CASE("hermiticity and positivity") {
  const Signature sig({2});
  const Complex i(0.0, 1.0);
  CHECK(is_hermitian(AlgebraElement(sig, {mat2(1, i, -i, 2)})));
  CHECK_FALSE(is_hermitian(AlgebraElement(sig, {mat2(1, i, i, 2)})));
  CHECK(is_positive(AlgebraElement(sig, {mat2(1, 0, 0, 0)})));
  CHECK_FALSE(is_positive(AlgebraElement(sig, {mat2(1, 0, 0, -0.5)})));
  // Non-Hermitian can never be positive.
  CHECK_FALSE(is_positive(AlgebraElement(sig, {mat2(1, 1, 0, 1)})));
}

TEST_CASE("norms") {
  const Signature sig({1, 2});
  const AlgebraElement x(sig, {mat1(3.0), mat2(0, 2, 0, 0)});
  CHECK(operator_norm(x) == doctest::Approx(3.0));
  CHECK(frobenius_norm(x) == doctest::Approx(std::sqrt(13.0)));
  CHECK(max_abs(x) == doctest::Approx(3.0));
}

TEST_CASE("algebra identities on random elements") {
  const Signature sig({1, 2, 3});
  Rng rng(17);
  for (int t = 0; t < 20; ++t) {
    std::vector<Matrix> xb, yb;
    for (int i = 0; i < sig.blocks(); ++i) {
      xb.push_back(gaussian_complex_matrix(rng, sig.dim(i), sig.dim(i)));
      yb.push_back(gaussian_complex_matrix(rng, sig.dim(i), sig.dim(i)));
    }
    const AlgebraElement x(sig, xb), y(sig, yb);
    // (xy)^dagger = y^dagger x^dagger
    const AlgebraElement lhs = adjoint(multiply(x, y));
    const AlgebraElement rhs = multiply(adjoint(y), adjoint(x));
    CHECK(max_abs(lhs - rhs) < 1e-12);
    // trace cyclicity
    CHECK(std::abs(total_trace(multiply(x, y)) -
                   total_trace(multiply(y, x))) < 1e-12);
    // trace_pair matches total_trace of the product
    CHECK(std::abs(trace_pair(x, y) - total_trace(multiply(x, y))) < 1e-12);
  }
}
