#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace wstar {

/// Deterministic random source. The engine is std::mt19937_64 (exactly
/// specified by the standard); the distributions are hand-rolled so that a
/// given seed produces the same stream on every platform, which the
/// reproducibility contract of the search engine relies on.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller (cached spare).
  double normal();

  /// Uniform integer in [0, n). Precondition n >= 1.
  std::uint64_t below(std::uint64_t n);

  /// Derives an independent stream seed from (master, index) via splitmix64.
  static std::uint64_t derive(std::uint64_t master, std::uint64_t index);

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Matrix with independent N(0,1) + i*N(0,1) entries.
Eigen::MatrixXcd gaussian_complex_matrix(Rng& rng, Eigen::Index rows,
                                         Eigen::Index cols);

/// Haar-like random unitary: QR of a complex Ginibre matrix with the phases
/// of the R diagonal absorbed into Q.
Eigen::MatrixXcd random_unitary(Rng& rng, Eigen::Index n);

}  // namespace wstar
