#pragma once

#include <cstdint>
#include <vector>

#include "wstar/algebra.hpp"

namespace wstar {

/// Faithful normal state: strictly positive definite block densities with
/// unit total trace. Construction validates and caches the per-block
/// eigendecomposition (eigenvalues descending) that the modular calculus
/// and the metrics run on.
class FaithfulState {
 public:
  FaithfulState() = default;

  const Signature& signature() const { return sig_; }
  const Matrix& block(int i) const { return blocks_[static_cast<std::size_t>(i)]; }
  const std::vector<Matrix>& blocks() const { return blocks_; }

  /// Eigenvalues of block i, descending order.
  const Eigen::VectorXd& eigenvalues(int i) const {
    return eigenvalues_[static_cast<std::size_t>(i)];
  }
  /// Unitary of eigenvectors of block i (columns match eigenvalues(i)).
  const Matrix& eigenvectors(int i) const {
    return eigenvectors_[static_cast<std::size_t>(i)];
  }

  double min_eigenvalue() const;
  double floor() const { return floor_; }

  AlgebraElement as_element() const;

  friend FaithfulState make_state(const Signature&, std::vector<Matrix>,
                                  double);

 private:
  Signature sig_;
  std::vector<Matrix> blocks_;
  std::vector<Eigen::VectorXd> eigenvalues_;
  std::vector<Matrix> eigenvectors_;
  double floor_ = kFaithfulnessFloor;
};

/// Validates Hermiticity (1e-10), positivity above the faithfulness floor,
/// and unit total trace (1e-9); the stored blocks are renormalized by the
/// computed trace so the unit-trace invariant holds to 1e-12.
FaithfulState make_state(const Signature& sig, std::vector<Matrix> blocks,
                         double floor = kFaithfulnessFloor);

/// Commutative state on the probability simplex: signature [1,...,1].
FaithfulState from_probability_vector(const std::vector<double>& p,
                                      double floor = kFaithfulnessFloor);

/// Wishart-style draw: G G^dagger per block (complex Gaussian G), mixed with
/// the normalized identity so the smallest eigenvalue clears the floor, then
/// trace-normalized. Deterministic in the seed.
FaithfulState random_faithful_state(const Signature& sig, std::uint64_t seed,
                                    double floor = kFaithfulnessFloor);

/// GNS pairing <x|y>_rho = rho(x^dagger y).
Complex gns_inner(const FaithfulState& rho, const AlgebraElement& x,
                  const AlgebraElement& y);

/// Tangent vector at a faithful state: Hermitian blocks, zero total trace
/// (per-block traces are unconstrained).
class TangentVector {
 public:
  TangentVector() = default;
  TangentVector(Signature sig, std::vector<Matrix> blocks);
  static TangentVector zero(const Signature& sig);

  const Signature& signature() const { return sig_; }
  const Matrix& block(int i) const { return blocks_[static_cast<std::size_t>(i)]; }
  const std::vector<Matrix>& blocks() const { return blocks_; }

  AlgebraElement as_element() const { return AlgebraElement(sig_, blocks_); }

  TangentVector& operator+=(const TangentVector& rhs);
  TangentVector& operator*=(double scale);
  friend TangentVector operator+(TangentVector lhs, const TangentVector& rhs) {
    lhs += rhs;
    return lhs;
  }
  friend TangentVector operator*(double scale, TangentVector rhs) {
    rhs *= scale;
    return rhs;
  }

 private:
  Signature sig_;
  std::vector<Matrix> blocks_;
};

/// Orthonormal basis of the tangent space under sum_i Tr(u_i w_i):
/// generalized Gell-Mann matrices per block (scaled to unit norm), then the
/// k-1 cross-block trace-balancing diagonal directions. Deterministic order.
std::vector<TangentVector> tangent_basis(const Signature& sig);

/// Random tangent vector: Gaussian Hermitian blocks projected to zero total
/// trace. Deterministic in the seed.
TangentVector random_tangent(const Signature& sig, std::uint64_t seed);

/// Solves (1/2)(rho v + v rho) = a for the unique self-adjoint v; in the
/// eigenbasis of rho this is v_ij = 2 a_ij / (lambda_i + lambda_j). The
/// result satisfies trace_pair(v, rho) = 0 whenever a has zero total trace.
AlgebraElement anticommutator_solve(const FaithfulState& rho,
                                    const TangentVector& a);

}  // namespace wstar
