#include "wstar/states.hpp"

#include <cmath>

#include "wstar/rng.hpp"

namespace wstar {

double FaithfulState::min_eigenvalue() const {
  double m = eigenvalues_.empty() ? 0.0 : eigenvalues_[0].minCoeff();
  for (const auto& ev : eigenvalues_) m = std::min(m, ev.minCoeff());
  return m;
}

AlgebraElement FaithfulState::as_element() const {
  return AlgebraElement(sig_, blocks_);
}

FaithfulState make_state(const Signature& sig, std::vector<Matrix> blocks,
                         double floor) {
  if (floor <= 0.0)
    fail(ErrorCode::InvalidArgument, "faithfulness floor must be positive");
  AlgebraElement as_elem(sig, blocks);  // shape + finiteness checks
  for (int i = 0; i < sig.blocks(); ++i) {
    const Matrix& b = blocks[static_cast<std::size_t>(i)];
    const double herm = (b - b.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kHermitianTol)
      fail(ErrorCode::NotHermitian,
           "block " + std::to_string(i) + " deviates from Hermitian by " +
               format_scalar(herm));
  }

  FaithfulState st;
  st.sig_ = sig;
  st.floor_ = floor;
  st.eigenvalues_.resize(static_cast<std::size_t>(sig.blocks()));
  st.eigenvectors_.resize(static_cast<std::size_t>(sig.blocks()));

  double total = 0.0;
  for (int i = 0; i < sig.blocks(); ++i) {
    // Work on the Hermitian part so validated inputs within tolerance get an
    // exactly Hermitian stored block.
    Matrix h = 0.5 * (blocks[static_cast<std::size_t>(i)] +
                      blocks[static_cast<std::size_t>(i)].adjoint());
    blocks[static_cast<std::size_t>(i)] = h;
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    Eigen::VectorXd ev = es.eigenvalues();
    total += ev.sum();
    // SelfAdjointEigenSolver sorts ascending; flip to descending.
    const Eigen::Index n = ev.size();
    Eigen::VectorXd desc(n);
    Matrix vec(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      desc(j) = ev(n - 1 - j);
      vec.col(j) = es.eigenvectors().col(n - 1 - j);
    }
    st.eigenvalues_[static_cast<std::size_t>(i)] = desc;
    st.eigenvectors_[static_cast<std::size_t>(i)] = vec;
  }

  if (std::abs(total - 1.0) > kNormalizationTol)
    fail(ErrorCode::NotNormalized,
         "total trace is " + format_scalar(total));

  for (int i = 0; i < sig.blocks(); ++i) {
    blocks[static_cast<std::size_t>(i)] /= total;
    st.eigenvalues_[static_cast<std::size_t>(i)] /= total;
  }
  st.blocks_ = std::move(blocks);

  const double min_ev = st.min_eigenvalue();
  if (min_ev <= floor)
    fail(ErrorCode::NotFaithful,
         "smallest eigenvalue " + format_scalar(min_ev) +
             " does not clear the floor " + format_scalar(floor));
  return st;
}

FaithfulState from_probability_vector(const std::vector<double>& p,
                                      double floor) {
  if (p.empty())
    fail(ErrorCode::InvalidArgument, "empty probability vector");
  Signature sig(std::vector<int>(p.size(), 1));
  std::vector<Matrix> blocks;
  blocks.reserve(p.size());
  for (double x : p) {
    Matrix m(1, 1);
    m(0, 0) = x;
    blocks.push_back(m);
  }
  return make_state(sig, std::move(blocks), floor);
}

FaithfulState random_faithful_state(const Signature& sig, std::uint64_t seed,
                                    double floor) {
  const int total_dim = sig.total_matrix_dim();
  if (floor <= 0.0 || floor >= 1.0 / total_dim)
    fail(ErrorCode::InvalidArgument,
         "floor must lie in (0, 1/total_matrix_dim)");
  Rng rng(seed);
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<std::size_t>(sig.blocks()));
  double trace = 0.0;
  for (int i = 0; i < sig.blocks(); ++i) {
    const int n = sig.dim(i);
    const Matrix g = gaussian_complex_matrix(rng, n, n);
    Matrix w = g * g.adjoint();
    blocks.push_back(w);
    trace += w.trace().real();
  }
  for (auto& b : blocks) b /= trace;
  // Mix with the normalized identity. The weight both clears the requested
  // floor with margin and caps eigenvalue ratios so downstream tolerances
  // stay inside double precision.
  const double w = std::min(1.0, std::max(0.02, 1.0001 * total_dim * floor));
  for (int i = 0; i < sig.blocks(); ++i) {
    Matrix& b = blocks[static_cast<std::size_t>(i)];
    b = (1.0 - w) * b +
        (w / total_dim) * Matrix::Identity(sig.dim(i), sig.dim(i));
  }
  return make_state(sig, std::move(blocks), floor);
}

Complex gns_inner(const FaithfulState& rho, const AlgebraElement& x,
                  const AlgebraElement& y) {
  check_same_signature(rho.signature(), x.signature(), "gns_inner");
  check_same_signature(rho.signature(), y.signature(), "gns_inner");
  Complex t = 0.0;
  for (int i = 0; i < rho.signature().blocks(); ++i)
    t += (rho.block(i) * x.block(i).adjoint() * y.block(i)).trace();
  return t;
}

TangentVector::TangentVector(Signature sig, std::vector<Matrix> blocks)
    : sig_(std::move(sig)), blocks_(std::move(blocks)) {
  AlgebraElement probe(sig_, blocks_);  // shape + finiteness checks
  if (!is_hermitian(probe, kHermitianTol))
    fail(ErrorCode::NotTangent, "tangent blocks must be Hermitian");
  const double tr = std::abs(total_trace(probe));
  if (tr > kTraceTol)
    fail(ErrorCode::NotTangent,
         "tangent total trace is " + format_scalar(tr) + ", expected 0");
}

TangentVector TangentVector::zero(const Signature& sig) {
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<std::size_t>(sig.blocks()));
  for (int i = 0; i < sig.blocks(); ++i)
    blocks.push_back(Matrix::Zero(sig.dim(i), sig.dim(i)));
  return TangentVector(sig, std::move(blocks));
}

TangentVector& TangentVector::operator+=(const TangentVector& rhs) {
  check_same_signature(sig_, rhs.sig_, "TangentVector::operator+=");
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] += rhs.blocks_[i];
  return *this;
}

TangentVector& TangentVector::operator*=(double scale) {
  for (auto& b : blocks_) b *= scale;
  return *this;
}

std::vector<TangentVector> tangent_basis(const Signature& sig) {
  std::vector<TangentVector> basis;
  basis.reserve(static_cast<std::size_t>(sig.tangent_dim()));
  const Complex im(0.0, 1.0);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  auto zero_blocks = [&]() {
    std::vector<Matrix> blocks;
    blocks.reserve(static_cast<std::size_t>(sig.blocks()));
    for (int i = 0; i < sig.blocks(); ++i)
      blocks.push_back(Matrix::Zero(sig.dim(i), sig.dim(i)));
    return blocks;
  };

  for (int b = 0; b < sig.blocks(); ++b) {
    const int n = sig.dim(b);
    for (int c = 1; c < n; ++c) {
      for (int r = 0; r < c; ++r) {
        auto sym = zero_blocks();
        sym[static_cast<std::size_t>(b)](r, c) = inv_sqrt2;
        sym[static_cast<std::size_t>(b)](c, r) = inv_sqrt2;
        basis.emplace_back(sig, std::move(sym));
        auto anti = zero_blocks();
        anti[static_cast<std::size_t>(b)](r, c) = -im * inv_sqrt2;
        anti[static_cast<std::size_t>(b)](c, r) = im * inv_sqrt2;
        basis.emplace_back(sig, std::move(anti));
      }
    }
    for (int l = 1; l < n; ++l) {
      auto diag = zero_blocks();
      const double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
      for (int j = 0; j < l; ++j)
        diag[static_cast<std::size_t>(b)](j, j) = norm;
      diag[static_cast<std::size_t>(b)](l, l) = -static_cast<double>(l) * norm;
      basis.emplace_back(sig, std::move(diag));
    }
  }

  // Cross-block balancing directions: multiples of the identity on the
  // leading blocks against the next block, zero elsewhere.
  int leading = 0;
  for (int j = 0; j + 1 < sig.blocks(); ++j) {
    leading += sig.dim(j);
    const int nj1 = sig.dim(j + 1);
    const double s = static_cast<double>(leading) / nj1;
    const double c = 1.0 / std::sqrt(leading + s * s * nj1);
    auto blocks = zero_blocks();
    for (int i = 0; i <= j; ++i)
      blocks[static_cast<std::size_t>(i)] =
          c * Matrix::Identity(sig.dim(i), sig.dim(i));
    blocks[static_cast<std::size_t>(j + 1)] =
        -c * s * Matrix::Identity(nj1, nj1);
    basis.emplace_back(sig, std::move(blocks));
  }
  return basis;
}

TangentVector random_tangent(const Signature& sig, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<std::size_t>(sig.blocks()));
  Complex trace = 0.0;
  for (int i = 0; i < sig.blocks(); ++i) {
    const int n = sig.dim(i);
    const Matrix g = gaussian_complex_matrix(rng, n, n);
    Matrix h = 0.5 * (g + g.adjoint());
    blocks.push_back(h);
    trace += h.trace();
  }
  const double shift = trace.real() / sig.total_matrix_dim();
  for (int i = 0; i < sig.blocks(); ++i)
    blocks[static_cast<std::size_t>(i)] -=
        shift * Matrix::Identity(sig.dim(i), sig.dim(i));
  return TangentVector(sig, std::move(blocks));
}

AlgebraElement anticommutator_solve(const FaithfulState& rho,
                                    const TangentVector& a) {
  check_same_signature(rho.signature(), a.signature(), "anticommutator_solve");
  std::vector<Matrix> blocks;
  blocks.reserve(a.blocks().size());
  for (int b = 0; b < rho.signature().blocks(); ++b) {
    const Matrix& u = rho.eigenvectors(b);
    const Eigen::VectorXd& lam = rho.eigenvalues(b);
    Matrix t = u.adjoint() * a.block(b) * u;
    for (Eigen::Index i = 0; i < t.rows(); ++i)
      for (Eigen::Index j = 0; j < t.cols(); ++j)
        t(i, j) *= 2.0 / (lam(i) + lam(j));
    blocks.push_back(u * t * u.adjoint());
  }
  return AlgebraElement(rho.signature(), std::move(blocks));
}

}  // namespace wstar
