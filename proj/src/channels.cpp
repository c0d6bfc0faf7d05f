#include "wstar/channels.hpp"

#include <cmath>

#include "wstar/rng.hpp"

namespace wstar {

Channel make_channel(
    Signature source, Signature target,
    std::vector<std::vector<std::vector<Matrix>>> components) {
  if (static_cast<int>(components.size()) != source.blocks())
    fail(ErrorCode::ShapeMismatch,
         "expected one component row per source block");
  Channel ch;
  ch.source_ = std::move(source);
  ch.target_ = std::move(target);
  ch.components_.resize(
      static_cast<std::size_t>(ch.source_.blocks() * ch.target_.blocks()));
  for (int k = 0; k < ch.source_.blocks(); ++k) {
    auto& row = components[static_cast<std::size_t>(k)];
    if (static_cast<int>(row.size()) != ch.target_.blocks())
      fail(ErrorCode::ShapeMismatch,
           "expected one Kraus list per target block in row " +
               std::to_string(k));
    Matrix sum = Matrix::Zero(ch.source_.dim(k), ch.source_.dim(k));
    for (int l = 0; l < ch.target_.blocks(); ++l) {
      for (const Matrix& kr : row[static_cast<std::size_t>(l)]) {
        if (kr.rows() != ch.target_.dim(l) || kr.cols() != ch.source_.dim(k))
          fail(ErrorCode::ShapeMismatch,
               "Kraus piece (" + std::to_string(k) + "," + std::to_string(l) +
                   ") is " + std::to_string(kr.rows()) + "x" +
                   std::to_string(kr.cols()) + ", expected " +
                   std::to_string(ch.target_.dim(l)) + "x" +
                   std::to_string(ch.source_.dim(k)));
        if (!kr.allFinite())
          fail(ErrorCode::InvalidArgument, "Kraus piece has non-finite entries");
        sum += kr.adjoint() * kr;
      }
      ch.components_[static_cast<std::size_t>(k * ch.target_.blocks() + l)] =
          std::move(row[static_cast<std::size_t>(l)]);
    }
    const double defect =
        (sum - Matrix::Identity(ch.source_.dim(k), ch.source_.dim(k)))
            .cwiseAbs()
            .maxCoeff();
    if (defect > 1e-10)
      fail(ErrorCode::NotTracePreserving,
           "source block " + std::to_string(k) +
               ": sum K^dagger K deviates from identity by " +
               format_scalar(defect));
  }
  return ch;
}

std::vector<Matrix> apply_raw(const Channel& ch,
                              const std::vector<Matrix>& blocks) {
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(ch.target().blocks()));
  for (int l = 0; l < ch.target().blocks(); ++l)
    out.push_back(Matrix::Zero(ch.target().dim(l), ch.target().dim(l)));
  for (int k = 0; k < ch.source().blocks(); ++k)
    for (int l = 0; l < ch.target().blocks(); ++l)
      for (const Matrix& kr : ch.kraus(k, l))
        out[static_cast<std::size_t>(l)] +=
            kr * blocks[static_cast<std::size_t>(k)] * kr.adjoint();
  return out;
}

FaithfulState apply(const Channel& ch, const FaithfulState& rho) {
  check_same_signature(ch.source(), rho.signature(), "apply(channel, state)");
  std::vector<Matrix> image = apply_raw(ch, rho.blocks());
  try {
    return make_state(ch.target(), std::move(image), rho.floor());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotFaithful)
      fail(ErrorCode::NotFaithfulImage,
           "channel is not faithful at this state: " + std::string(e.what()));
    throw;
  }
}

TangentVector apply(const Channel& ch, const TangentVector& v) {
  check_same_signature(ch.source(), v.signature(), "apply(channel, tangent)");
  return TangentVector(ch.target(), apply_raw(ch, v.blocks()));
}

AlgebraElement heisenberg_dual(const Channel& ch, const AlgebraElement& x) {
  check_same_signature(ch.target(), x.signature(), "heisenberg_dual");
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(ch.source().blocks()));
  for (int k = 0; k < ch.source().blocks(); ++k) {
    Matrix acc = Matrix::Zero(ch.source().dim(k), ch.source().dim(k));
    for (int l = 0; l < ch.target().blocks(); ++l)
      for (const Matrix& kr : ch.kraus(k, l))
        acc += kr.adjoint() * x.block(l) * kr;
    out.push_back(std::move(acc));
  }
  return AlgebraElement(ch.source(), std::move(out));
}

bool is_faithful(const Channel& ch, double floor) {
  const int d = ch.source().total_matrix_dim();
  std::vector<Matrix> mixed;
  mixed.reserve(static_cast<std::size_t>(ch.source().blocks()));
  for (int k = 0; k < ch.source().blocks(); ++k)
    mixed.push_back(Matrix::Identity(ch.source().dim(k), ch.source().dim(k)) /
                    d);
  const std::vector<Matrix> image = apply_raw(ch, mixed);
  for (const Matrix& b : image) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (b + b.adjoint()),
                                             Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() <= floor) return false;
  }
  return true;
}

Channel compose(const Channel& ch2, const Channel& ch1) {
  check_same_signature(ch2.source(), ch1.target(), "compose");
  std::vector<std::vector<std::vector<Matrix>>> components(
      static_cast<std::size_t>(ch1.source().blocks()));
  for (int k = 0; k < ch1.source().blocks(); ++k) {
    components[static_cast<std::size_t>(k)].resize(
        static_cast<std::size_t>(ch2.target().blocks()));
    for (int m = 0; m < ch2.target().blocks(); ++m) {
      auto& list =
          components[static_cast<std::size_t>(k)][static_cast<std::size_t>(m)];
      for (int l = 0; l < ch1.target().blocks(); ++l)
        for (const Matrix& k2 : ch2.kraus(l, m))
          for (const Matrix& k1 : ch1.kraus(k, l)) list.push_back(k2 * k1);
    }
  }
  return make_channel(ch1.source(), ch2.target(), std::move(components));
}

Channel markov_channel(const Eigen::MatrixXd& S) {
  const int m = static_cast<int>(S.rows());
  const int n = static_cast<int>(S.cols());
  if (m < 1 || n < 1)
    fail(ErrorCode::ShapeMismatch, "stochastic matrix must be nonempty");
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < n; ++k)
      if (S(j, k) < 0.0)
        fail(ErrorCode::NotStochastic,
             "negative entry at (" + std::to_string(j) + "," +
                 std::to_string(k) + ")");
  for (int k = 0; k < n; ++k) {
    const double col = S.col(k).sum();
    if (std::abs(col - 1.0) > 1e-12)
      fail(ErrorCode::NotStochastic,
           "column " + std::to_string(k) + " sums to " + format_scalar(col));
  }
  std::vector<std::vector<std::vector<Matrix>>> components(
      static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    components[static_cast<std::size_t>(k)].resize(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
      if (S(j, k) == 0.0) continue;
      Matrix kr(1, 1);
      kr(0, 0) = std::sqrt(S(j, k));
      components[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]
          .push_back(kr);
    }
  }
  return make_channel(Signature(std::vector<int>(static_cast<std::size_t>(n), 1)),
                      Signature(std::vector<int>(static_cast<std::size_t>(m), 1)),
                      std::move(components));
}

EmbeddingPair congruent_embedding_classical(
    int n_cells, const std::vector<int>& cell_of,
    const std::vector<double>& weights) {
  const int m = static_cast<int>(cell_of.size());
  if (n_cells < 1 || m < n_cells)
    fail(ErrorCode::InvalidPartition,
         "need at least one target coordinate per cell");
  if (weights.size() != cell_of.size())
    fail(ErrorCode::InvalidWeights, "one weight per target coordinate");
  std::vector<double> cell_sum(static_cast<std::size_t>(n_cells), 0.0);
  std::vector<int> cell_count(static_cast<std::size_t>(n_cells), 0);
  for (int j = 0; j < m; ++j) {
    const int c = cell_of[static_cast<std::size_t>(j)];
    if (c < 0 || c >= n_cells)
      fail(ErrorCode::InvalidPartition,
           "cell index " + std::to_string(c) + " out of range");
    if (!(weights[static_cast<std::size_t>(j)] > 0.0))
      fail(ErrorCode::InvalidWeights, "weights must be positive");
    cell_sum[static_cast<std::size_t>(c)] += weights[static_cast<std::size_t>(j)];
    cell_count[static_cast<std::size_t>(c)] += 1;
  }
  for (int c = 0; c < n_cells; ++c) {
    if (cell_count[static_cast<std::size_t>(c)] == 0)
      fail(ErrorCode::InvalidPartition,
           "cell " + std::to_string(c) + " is empty");
    if (std::abs(cell_sum[static_cast<std::size_t>(c)] - 1.0) > 1e-12)
      fail(ErrorCode::InvalidWeights,
           "weights in cell " + std::to_string(c) + " sum to " +
               format_scalar(cell_sum[static_cast<std::size_t>(c)]));
  }
  Eigen::MatrixXd embed = Eigen::MatrixXd::Zero(m, n_cells);
  for (int j = 0; j < m; ++j)
    embed(j, cell_of[static_cast<std::size_t>(j)]) =
        weights[static_cast<std::size_t>(j)];
  Eigen::MatrixXd collapse = Eigen::MatrixXd::Zero(n_cells, m);
  for (int j = 0; j < m; ++j)
    collapse(cell_of[static_cast<std::size_t>(j)], j) = 1.0;
  return EmbeddingPair{markov_channel(embed), markov_channel(collapse)};
}

EmbeddingPair congruent_embedding_quantum(const Matrix& unitary,
                                          const FaithfulState& sigma) {
  if (sigma.signature().blocks() != 1)
    fail(ErrorCode::InvalidArgument, "ancilla state must live on one block");
  const int d = sigma.signature().dim(0);
  const int nd = static_cast<int>(unitary.rows());
  if (unitary.rows() != unitary.cols() || nd % d != 0 || nd / d < 1)
    fail(ErrorCode::ShapeMismatch,
         "unitary must be square on C^(n*d) for some n >= 1");
  const int n = nd / d;
  const double unit_defect =
      (unitary.adjoint() * unitary - Matrix::Identity(nd, nd))
          .cwiseAbs()
          .maxCoeff();
  if (unit_defect > 1e-10)
    fail(ErrorCode::NotUnitary,
         "U^dagger U deviates from identity by " + format_scalar(unit_defect));

  // Embed Kraus: U (I_n (x) sqrt(mu_a) |chi_a>), tensor index (i, b) -> i*d + b.
  std::vector<Matrix> embed_kraus;
  for (int a = 0; a < d; ++a) {
    const double mu = sigma.eigenvalues(0)(a);
    Matrix e = Matrix::Zero(nd, n);
    for (int i = 0; i < n; ++i)
      for (int b = 0; b < d; ++b)
        e(i * d + b, i) = std::sqrt(mu) * sigma.eigenvectors(0)(b, a);
    embed_kraus.push_back(unitary * e);
  }
  Channel embed = make_channel(
      Signature({n}), Signature({nd}),
      {{std::move(embed_kraus)}});

  // Left inverse Kraus: (I_n (x) <b|) U^dagger over the standard ancilla basis.
  std::vector<Matrix> inv_kraus;
  for (int b = 0; b < d; ++b) {
    Matrix p = Matrix::Zero(n, nd);
    for (int i = 0; i < n; ++i) p(i, i * d + b) = 1.0;
    inv_kraus.push_back(p * unitary.adjoint());
  }
  Channel left_inverse = make_channel(
      Signature({nd}), Signature({n}),
      {{std::move(inv_kraus)}});
  return EmbeddingPair{std::move(embed), std::move(left_inverse)};
}

Channel random_channel(const Signature& source, const Signature& target,
                       int kraus_count, std::uint64_t seed) {
  if (kraus_count < 1)
    fail(ErrorCode::InvalidArgument, "kraus_count must be >= 1");
  Rng rng(seed);
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<std::vector<std::vector<Matrix>>> components(
        static_cast<std::size_t>(source.blocks()));
    bool degenerate = false;
    for (int k = 0; k < source.blocks() && !degenerate; ++k) {
      auto& row = components[static_cast<std::size_t>(k)];
      row.resize(static_cast<std::size_t>(target.blocks()));
      Matrix norm = Matrix::Zero(source.dim(k), source.dim(k));
      for (int l = 0; l < target.blocks(); ++l)
        for (int a = 0; a < kraus_count; ++a) {
          Matrix kr = gaussian_complex_matrix(rng, target.dim(l), source.dim(k));
          norm += kr.adjoint() * kr;
          row[static_cast<std::size_t>(l)].push_back(std::move(kr));
        }
      Eigen::SelfAdjointEigenSolver<Matrix> es(norm);
      if (es.eigenvalues().minCoeff() < 1e-12) {
        degenerate = true;
        break;
      }
      Eigen::VectorXd inv_sqrt = es.eigenvalues();
      for (Eigen::Index i = 0; i < inv_sqrt.size(); ++i)
        inv_sqrt(i) = 1.0 / std::sqrt(inv_sqrt(i));
      const Matrix normalizer = es.eigenvectors() * inv_sqrt.asDiagonal() *
                                es.eigenvectors().adjoint();
      for (auto& list : row)
        for (Matrix& kr : list) kr = kr * normalizer;
    }
    if (!degenerate) return make_channel(source, target, std::move(components));
  }
  fail(ErrorCode::DegenerateDraw,
       "100 redraws produced singular Kraus normalizers");
}

Matrix component_transfer_matrix(const Channel& ch, int k, int l) {
  const int ns = ch.source().dim(k);
  const int nt = ch.target().dim(l);
  Matrix t = Matrix::Zero(nt * nt, ns * ns);
  for (const Matrix& kr : ch.kraus(k, l)) {
    // vec(K rho K^dagger) = (conj(K) (x) K) vec(rho), column-major vec.
    for (int c1 = 0; c1 < ns; ++c1)
      for (int c2 = 0; c2 < ns; ++c2)
        for (int r1 = 0; r1 < nt; ++r1)
          for (int r2 = 0; r2 < nt; ++r2)
            t(r1 + r2 * nt, c1 + c2 * ns) +=
                kr(r1, c1) * std::conj(kr(r2, c2));
  }
  return t;
}

Matrix choi_from_transfer(const Matrix& transfer, int n_src, int n_tgt) {
  if (transfer.rows() != n_tgt * n_tgt || transfer.cols() != n_src * n_src)
    fail(ErrorCode::ShapeMismatch, "transfer matrix shape mismatch");
  Matrix choi = Matrix::Zero(n_src * n_tgt, n_src * n_tgt);
  for (int i = 0; i < n_src; ++i)
    for (int j = 0; j < n_src; ++j)
      for (int r = 0; r < n_tgt; ++r)
        for (int s = 0; s < n_tgt; ++s)
          choi(i * n_tgt + r, j * n_tgt + s) =
              transfer(r + s * n_tgt, i + j * n_src);
  return choi;
}

std::vector<Matrix> kraus_from_choi(const Matrix& choi, int n_src, int n_tgt,
                                    double tol) {
  if (choi.rows() != n_src * n_tgt || choi.cols() != n_src * n_tgt)
    fail(ErrorCode::ShapeMismatch, "Choi matrix shape mismatch");
  const Matrix h = 0.5 * (choi + choi.adjoint());
  if ((choi - h).cwiseAbs().maxCoeff() > tol)
    fail(ErrorCode::NotCompletelyPositive, "Choi matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  std::vector<Matrix> kraus;
  for (Eigen::Index a = 0; a < es.eigenvalues().size(); ++a) {
    const double mu = es.eigenvalues()(a);
    if (mu < -tol)
      fail(ErrorCode::NotCompletelyPositive,
           "Choi eigenvalue " + format_scalar(mu));
    if (mu <= tol) continue;
    Matrix kr(n_tgt, n_src);
    for (int i = 0; i < n_src; ++i)
      for (int r = 0; r < n_tgt; ++r)
        kr(r, i) = std::sqrt(mu) * es.eigenvectors()(i * n_tgt + r, a);
    kraus.push_back(std::move(kr));
  }
  return kraus;
}

}  // namespace wstar
