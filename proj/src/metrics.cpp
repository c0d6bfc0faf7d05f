#include "wstar/metrics.hpp"

#include <cmath>

namespace wstar {

namespace {

void require_validated(const MonotoneFunction& f) {
  if (!f.validated())
    fail(ErrorCode::UnvalidatedFunction,
         "'" + f.name() + "' has not passed the validation gates");
}

}  // namespace

double metric_trace_form(const MonotoneFunction& f, const FaithfulState& rho,
                         const TangentVector& a, const TangentVector& b) {
  require_validated(f);
  check_same_signature(rho.signature(), a.signature(), "metric_trace_form");
  check_same_signature(rho.signature(), b.signature(), "metric_trace_form");
  Complex acc = 0.0;
  for (int k = 0; k < rho.signature().blocks(); ++k) {
    const Matrix& u = rho.eigenvectors(k);
    const Eigen::VectorXd& lam = rho.eigenvalues(k);
    const Matrix av = u.adjoint() * a.block(k) * u;
    const Matrix bv = u.adjoint() * b.block(k) * u;
    // Tr(A C) with C_{qp} = B_{qp} / (lambda_p f(lambda_q / lambda_p)).
    for (Eigen::Index p = 0; p < av.rows(); ++p)
      for (Eigen::Index q = 0; q < av.cols(); ++q)
        acc += av(p, q) * bv(q, p) /
               (lam(p) * f.eval_guarded(lam(q) / lam(p)));
  }
  return acc.real();
}

Complex gns_form_pairing(const MonotoneFunction& f, const FaithfulState& rho,
                         const AlgebraElement& v, const AlgebraElement& w) {
  require_validated(f);
  check_same_signature(rho.signature(), v.signature(), "gns_form_pairing");
  check_same_signature(rho.signature(), w.signature(), "gns_form_pairing");
  const double vt = std::abs(trace_pair(v, rho.as_element()));
  if (vt > 1e-8)
    fail(ErrorCode::NotTangentCoordinate,
         "trace_pair(v, rho) = " + format_scalar(vt) + ", expected 0");
  const double wt = std::abs(trace_pair(w, rho.as_element()));
  if (wt > 1e-8)
    fail(ErrorCode::NotTangentCoordinate,
         "trace_pair(w, rho) = " + format_scalar(wt) + ", expected 0");
  return gns_inner(rho, v, apply_big_F(f, rho, w));
}

double metric_gns_form(const MonotoneFunction& f, const FaithfulState& rho,
                       const AlgebraElement& v, const AlgebraElement& w) {
  // The 1/2 matches the trace form on anticommutator coordinates: with
  // a = (1/2){rho, v} the pairing <v|F(Delta)w>_rho double counts the
  // symmetrized product.
  return 0.5 * gns_form_pairing(f, rho, v, w).real();
}

double fisher_rao(const std::vector<double>& p, const std::vector<double>& u,
                  const std::vector<double>& w) {
  if (p.empty() || u.size() != p.size() || w.size() != p.size())
    fail(ErrorCode::SignatureMismatch,
         "fisher_rao needs vectors of equal nonzero length");
  double total = 0.0;
  for (double x : p) {
    if (!(x > 0.0))
      fail(ErrorCode::NotFaithful, "p must be interior to the simplex");
    total += x;
  }
  if (std::abs(total - 1.0) > kNormalizationTol)
    fail(ErrorCode::NotNormalized, "p sums to " + format_scalar(total));
  double su = 0.0, sw = 0.0;
  for (double x : u) su += x;
  for (double x : w) sw += x;
  if (std::abs(su) > kHermitianTol || std::abs(sw) > kHermitianTol)
    fail(ErrorCode::NotTangent, "tangent coordinates must sum to 0");
  double g = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) g += u[j] * w[j] / p[j];
  return g;
}

GramReport gram(const MonotoneFunction& f, const FaithfulState& rho,
                const std::vector<TangentVector>& basis) {
  const int m = static_cast<int>(basis.size());
  Eigen::MatrixXd g(m, m);
  for (int k = 0; k < m; ++k)
    for (int l = k; l < m; ++l) {
      const double v = metric_trace_form(f, rho, basis[static_cast<std::size_t>(k)],
                                         basis[static_cast<std::size_t>(l)]);
      g(k, l) = v;
      g(l, k) = v;
    }
  GramReport report;
  report.signature = rho.signature();
  report.function = f.name();
  report.basis_size = m;
  report.gram = g;
  if (m > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
    report.min_eig = es.eigenvalues().minCoeff();
  }
  return report;
}

GramReport gram(const MonotoneFunction& f, const FaithfulState& rho) {
  return gram(f, rho, tangent_basis(rho.signature()));
}

}  // namespace wstar
