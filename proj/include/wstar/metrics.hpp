#pragma once

#include <optional>

#include "wstar/funcalc.hpp"

namespace wstar {

/// Trace form of the monotone metric attached to f:
///   G(a, b) = Tr(a . (K^f_rho)^{-1}(b)),   K^f_rho = f(L R^{-1}) R,
/// evaluated entrywise in the eigenbasis of rho, where (K^f)^{-1} scales
/// entry (i,j) by the Morozova-Chentsov factor 1/(lambda_j f(lambda_i/lambda_j)).
/// This is the reference route; the GNS form below must agree with it.
double metric_trace_form(const MonotoneFunction& f, const FaithfulState& rho,
                         const TangentVector& a, const TangentVector& b);

/// GNS form on anticommutator coordinates v, w (self-adjoint with
/// trace_pair(v, rho) = 0): (1/2) Re <v | F(Delta_rho)(w)>_rho with
/// F(Delta) = f(Delta)^{-1}(Delta + 1). Agrees with metric_trace_form when
/// a = (1/2)(rho v + v rho), b likewise.
double metric_gns_form(const MonotoneFunction& f, const FaithfulState& rho,
                       const AlgebraElement& v, const AlgebraElement& w);

/// The complex GNS pairing <v | F(Delta_rho)(w)>_rho before taking the real
/// part; exposed so tests can watch the imaginary remainder.
Complex gns_form_pairing(const MonotoneFunction& f, const FaithfulState& rho,
                         const AlgebraElement& v, const AlgebraElement& w);

/// Classical Fisher-Rao form sum_j u_j w_j / p_j on the interior of the
/// probability simplex. u and w must sum to zero.
double fisher_rao(const std::vector<double>& p, const std::vector<double>& u,
                  const std::vector<double>& w);

struct GramReport {
  Signature signature;
  std::string function;
  int basis_size = 0;
  Eigen::MatrixXd gram;
  double min_eig = 0.0;
  std::optional<std::uint64_t> state_seed;
};

/// Gram matrix of the metric over the given tangent frame. Entries are
/// independent metric_trace_form evaluations; the matrix is symmetrized and
/// its smallest eigenvalue recorded.
GramReport gram(const MonotoneFunction& f, const FaithfulState& rho,
                const std::vector<TangentVector>& basis);

/// gram over the canonical tangent_basis of rho's signature.
GramReport gram(const MonotoneFunction& f, const FaithfulState& rho);

}  // namespace wstar
