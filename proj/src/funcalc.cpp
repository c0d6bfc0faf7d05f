#include "wstar/funcalc.hpp"

#include <cmath>
#include <limits>

#include "wstar/rng.hpp"

namespace wstar {

MonotoneFunction MonotoneFunction::unchecked(
    std::string name, std::string formula,
    std::function<double(double)> eval, double value_at_one, bool validated) {
  MonotoneFunction f;
  f.name_ = std::move(name);
  f.formula_ = std::move(formula);
  f.eval_ = std::move(eval);
  f.value_at_one_ = value_at_one;
  f.validated_ = validated;
  return f;
}

double MonotoneFunction::eval_guarded(double t) const {
  if (std::abs(t - 1.0) < kRatioOneTol) return value_at_one_;
  return eval_(t);
}

const FunctionCatalog& FunctionCatalog::builtin() {
  static const FunctionCatalog catalog = [] {
    FunctionCatalog c;
    c.entries_.push_back(MonotoneFunction::unchecked(
        "sld", "(1+t)/2", [](double t) { return 0.5 * (1.0 + t); }, 1.0,
        true));
    c.entries_.push_back(MonotoneFunction::unchecked(
        "rld", "2t/(1+t)", [](double t) { return 2.0 * t / (1.0 + t); }, 1.0,
        true));
    c.entries_.push_back(MonotoneFunction::unchecked(
        "kmb", "(t-1)/log(t)",
        [](double t) {
          const double u = t - 1.0;
          if (std::abs(u) < 1e-12) return 1.0;
          // First-order branch: (t-1)/log(t) = 1 + u/2 + O(u^2).
          if (std::abs(u) < 1e-6) return 1.0 + 0.5 * u;
          return u / std::log(t);
        },
        1.0, true));
    c.entries_.push_back(MonotoneFunction::unchecked(
        "wy", "((1+sqrt(t))/2)^2",
        [](double t) {
          const double s = 0.5 * (1.0 + std::sqrt(t));
          return s * s;
        },
        1.0, true));
    c.entries_.push_back(MonotoneFunction::unchecked(
        "geometric", "sqrt(t)", [](double t) { return std::sqrt(t); }, 1.0,
        true));
    return c;
  }();
  return catalog;
}

const MonotoneFunction& FunctionCatalog::get(const std::string& name) const {
  const std::string key = (name == "bures") ? "sld" : name;
  for (const auto& f : entries_)
    if (f.name() == key) return f;
  fail(ErrorCode::UnknownFunction, "no catalog entry named '" + name + "'");
}

std::vector<std::string> FunctionCatalog::names() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& f : entries_) out.push_back(f.name());
  return out;
}

std::vector<double> symmetry_grid() {
  std::vector<double> grid;
  grid.reserve(61);
  for (int i = 0; i <= 60; ++i)
    grid.push_back(std::pow(10.0, -3.0 + 6.0 * i / 60.0));
  return grid;
}

double check_symmetry(const MonotoneFunction& f,
                      const std::vector<double>& grid) {
  double worst = 0.0;
  for (double t : grid)
    worst = std::max(worst, std::abs(f.eval_guarded(t) -
                                     t * f.eval_guarded(1.0 / t)));
  return worst;
}

namespace {

Matrix matrix_function(const MonotoneFunction& f, const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) ev(i) = f.eval_guarded(ev(i));
  return es.eigenvectors() * ev.asDiagonal() *
         es.eigenvectors().adjoint();
}

}  // namespace

double check_operator_monotone_sample(const MonotoneFunction& f, int dim,
                                      int trials, std::uint64_t seed) {
  if (dim < 1 || trials < 1)
    fail(ErrorCode::InvalidArgument, "sampler needs dim >= 1, trials >= 1");
  double min_eig = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(t)));
    const Matrix g1 = gaussian_complex_matrix(rng, dim, dim);
    const Matrix g2 = gaussian_complex_matrix(rng, dim, dim);
    const Matrix p = g1 * g1.adjoint();
    // Small increments expose the indefinite cross term of non-monotone
    // candidates; large ones cover the coarse ordering.
    const double scale = std::pow(10.0, -2.0 * rng.uniform());
    const Matrix q = scale * (g2 * g2.adjoint());
    const Matrix fa = matrix_function(f, p);
    const Matrix fb = matrix_function(f, p + q);
    Eigen::SelfAdjointEigenSolver<Matrix> es(fb - fa, Eigen::EigenvaluesOnly);
    min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
  }
  return min_eig;
}

MonotoneFunction validate_function(const MonotoneFunction& candidate) {
  for (double t : symmetry_grid()) {
    const double v = candidate.eval_guarded(t);
    if (!(v > 0.0) || !std::isfinite(v))
      fail(ErrorCode::UnvalidatedFunction,
           "'" + candidate.name() + "' is not positive at t=" +
               format_scalar(t));
  }
  const double sym = check_symmetry(candidate);
  if (sym > 1e-10)
    fail(ErrorCode::UnvalidatedFunction,
         "'" + candidate.name() + "' violates f(t) = t f(1/t), defect " +
             format_scalar(sym));
  const double mono =
      check_operator_monotone_sample(candidate, 4, 200, 0x57A7E5EEDULL);
  if (mono < -1e-8)
    fail(ErrorCode::UnvalidatedFunction,
         "'" + candidate.name() +
             "' failed the sampled monotonicity gate, min eig " +
             format_scalar(mono));
  return MonotoneFunction::unchecked(candidate.name(), candidate.formula(),
                                     [candidate](double t) { return candidate(t); },
                                     candidate.value_at_one(), true);
}

AlgebraElement apply_left(const FaithfulState& rho, const AlgebraElement& b) {
  check_same_signature(rho.signature(), b.signature(), "apply_left");
  std::vector<Matrix> blocks;
  blocks.reserve(b.blocks().size());
  for (int i = 0; i < rho.signature().blocks(); ++i)
    blocks.push_back(rho.block(i) * b.block(i));
  return AlgebraElement(rho.signature(), std::move(blocks));
}

AlgebraElement apply_right(const FaithfulState& rho, const AlgebraElement& b) {
  check_same_signature(rho.signature(), b.signature(), "apply_right");
  std::vector<Matrix> blocks;
  blocks.reserve(b.blocks().size());
  for (int i = 0; i < rho.signature().blocks(); ++i)
    blocks.push_back(b.block(i) * rho.block(i));
  return AlgebraElement(rho.signature(), std::move(blocks));
}

namespace {

/// Shared core of the entrywise spectral calculus: transforms b into the
/// eigenbasis of rho, scales entry (i,j) by scale(lambda_i, lambda_j), and
/// transforms back.
template <typename ScaleFn>
AlgebraElement entrywise_modular(const FaithfulState& rho,
                                 const AlgebraElement& b, ScaleFn scale) {
  std::vector<Matrix> blocks;
  blocks.reserve(b.blocks().size());
  for (int k = 0; k < rho.signature().blocks(); ++k) {
    const Matrix& u = rho.eigenvectors(k);
    const Eigen::VectorXd& lam = rho.eigenvalues(k);
    Matrix t = u.adjoint() * b.block(k) * u;
    for (Eigen::Index i = 0; i < t.rows(); ++i)
      for (Eigen::Index j = 0; j < t.cols(); ++j)
        t(i, j) *= scale(lam(i), lam(j));
    blocks.push_back(u * t * u.adjoint());
  }
  return AlgebraElement(rho.signature(), std::move(blocks));
}

}  // namespace

AlgebraElement apply_modular(const FaithfulState& rho,
                             const AlgebraElement& b) {
  check_same_signature(rho.signature(), b.signature(), "apply_modular");
  return entrywise_modular(rho, b,
                           [](double li, double lj) { return li / lj; });
}

AlgebraElement apply_f_of_modular(const MonotoneFunction& f,
                                  const FaithfulState& rho,
                                  const AlgebraElement& b) {
  check_same_signature(rho.signature(), b.signature(), "apply_f_of_modular");
  return entrywise_modular(rho, b, [&f](double li, double lj) {
    return f.eval_guarded(li / lj);
  });
}

AlgebraElement apply_big_F(const MonotoneFunction& f, const FaithfulState& rho,
                           const AlgebraElement& b) {
  check_same_signature(rho.signature(), b.signature(), "apply_big_F");
  return entrywise_modular(rho, b, [&f](double li, double lj) {
    const double t = li / lj;
    const double ft = f.eval_guarded(t);
    if (!(ft > 0.0) || !std::isfinite(ft))
      fail(ErrorCode::SingularFunction,
           "f('" + f.name() + "') is not positive at ratio " +
               format_scalar(t));
    return (t + 1.0) / ft;
  });
}

}  // namespace wstar
