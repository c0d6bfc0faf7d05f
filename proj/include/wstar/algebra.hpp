#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "wstar/errors.hpp"

namespace wstar {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kNormalizationTol = 1e-9;
inline constexpr double kFaithfulnessFloor = 1e-9;

/// Block dimensions (n_1, ..., n_k) of a finite-dimensional W*-algebra
/// realized as a direct sum of full matrix algebras M_{n_i}(C). All-ones
/// signatures are the commutative (probability simplex) case; a single
/// block is the full matrix algebra B(C^n).
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<int> dims);

  /// Parses "2" or "1,2" style block lists.
  static Signature parse(const std::string& spec);

  int blocks() const { return static_cast<int>(dims_.size()); }
  int dim(int block) const { return dims_[static_cast<std::size_t>(block)]; }
  const std::vector<int>& dims() const { return dims_; }

  /// Sum of block dimensions (size of the block-diagonal matrix picture).
  int total_matrix_dim() const;
  /// Real dimension of the self-adjoint part, sum n_i^2.
  int ambient_dim() const;
  /// Dimension of the tangent space at a state, sum n_i^2 - 1.
  int tangent_dim() const;
  bool commutative() const;

  std::string to_string() const;

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<int> dims_;
};

/// Element of the direct-sum algebra: one square complex matrix per block.
class AlgebraElement {
 public:
  AlgebraElement() = default;
  AlgebraElement(Signature sig, std::vector<Matrix> blocks);

  static AlgebraElement zero(const Signature& sig);

  const Signature& signature() const { return sig_; }
  const Matrix& block(int i) const { return blocks_[static_cast<std::size_t>(i)]; }
  Matrix& block(int i) { return blocks_[static_cast<std::size_t>(i)]; }
  const std::vector<Matrix>& blocks() const { return blocks_; }

  AlgebraElement& operator+=(const AlgebraElement& rhs);
  AlgebraElement& operator-=(const AlgebraElement& rhs);
  AlgebraElement& operator*=(Complex scale);
  friend AlgebraElement operator+(AlgebraElement lhs, const AlgebraElement& rhs) {
    lhs += rhs;
    return lhs;
  }
  friend AlgebraElement operator-(AlgebraElement lhs, const AlgebraElement& rhs) {
    lhs -= rhs;
    return lhs;
  }
  friend AlgebraElement operator*(Complex scale, AlgebraElement rhs) {
    rhs *= scale;
    return rhs;
  }

 private:
  Signature sig_;
  std::vector<Matrix> blocks_;
};

AlgebraElement identity(const Signature& sig);
AlgebraElement adjoint(const AlgebraElement& x);
AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y);

/// Total trace sum_i Tr(x_i).
Complex total_trace(const AlgebraElement& x);

/// sum_i Tr(x_i y_i), the trace pairing of the direct sum.
Complex trace_pair(const AlgebraElement& x, const AlgebraElement& y);

/// True iff x is Hermitian within tol entrywise and all eigenvalues >= -tol.
bool is_positive(const AlgebraElement& x, double tol = kHermitianTol);

bool is_hermitian(const AlgebraElement& x, double tol = kHermitianTol);

/// Direct-sum operator norm: max over blocks of the largest singular value.
double operator_norm(const AlgebraElement& x);

/// Frobenius norm of the whole tuple; convenient for residual checks.
double frobenius_norm(const AlgebraElement& x);

double max_abs(const AlgebraElement& x);

void check_same_signature(const Signature& a, const Signature& b,
                          const char* where);

}  // namespace wstar
