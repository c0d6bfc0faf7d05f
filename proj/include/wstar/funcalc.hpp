#pragma once

#include <functional>
#include <string>
#include <vector>

#include "wstar/states.hpp"

namespace wstar {

/// Threshold below which |t - 1| is treated as exactly 1 in the spectral
/// calculus (degenerate eigenvalue pairs).
inline constexpr double kRatioOneTol = 1e-12;

/// An operator monotone candidate f : (0,inf) -> (0,inf) with the symmetry
/// f(t) = t f(1/t). Instances enter the metrics only after validation
/// (catalog entries ship validated; user functions go through
/// validate_function).
class MonotoneFunction {
 public:
  MonotoneFunction() = default;

  /// Constructs without running the validation gates. For catalog entries
  /// and for tests that deliberately inject broken functions.
  static MonotoneFunction unchecked(std::string name, std::string formula,
                                    std::function<double(double)> eval,
                                    double value_at_one, bool validated);

  const std::string& name() const { return name_; }
  const std::string& formula() const { return formula_; }
  double value_at_one() const { return value_at_one_; }
  bool validated() const { return validated_; }

  /// Raw evaluation at t > 0.
  double operator()(double t) const { return eval_(t); }

  /// Evaluation with the degenerate-ratio guard: returns value_at_one when
  /// |t - 1| < 1e-12.
  double eval_guarded(double t) const;

 private:
  std::string name_;
  std::string formula_;
  std::function<double(double)> eval_;
  double value_at_one_ = 1.0;
  bool validated_ = false;
};

/// The shipped catalog: sld (Bures), rld, kmb, wy, geometric.
class FunctionCatalog {
 public:
  static const FunctionCatalog& builtin();

  /// Lookup by name ("bures" aliases "sld"). Throws UnknownFunction.
  const MonotoneFunction& get(const std::string& name) const;
  const std::vector<MonotoneFunction>& all() const { return entries_; }
  std::vector<std::string> names() const;

 private:
  std::vector<MonotoneFunction> entries_;
};

/// Log-spaced symmetry grid 10^-3 .. 10^3, 61 points.
std::vector<double> symmetry_grid();

/// max over the grid of |f(t) - t f(1/t)|.
double check_symmetry(const MonotoneFunction& f,
                      const std::vector<double>& grid = symmetry_grid());

/// Randomized operator-monotonicity probe: draws Hermitian PD pairs A <= B
/// and returns the smallest eigenvalue of f(B) - f(A) seen over all trials
/// (>= 0 up to roundoff for genuinely operator monotone f).
double check_operator_monotone_sample(const MonotoneFunction& f, int dim,
                                      int trials, std::uint64_t seed);

/// Gate for user-supplied functions: symmetry defect <= 1e-10, positivity on
/// the grid, sampled monotonicity >= -1e-8 (dim 4, 200 trials, fixed seed).
/// Returns a validated copy or throws UnvalidatedFunction.
MonotoneFunction validate_function(const MonotoneFunction& candidate);

/// Left multiplication b -> rho b.
AlgebraElement apply_left(const FaithfulState& rho, const AlgebraElement& b);
/// Right multiplication b -> b rho.
AlgebraElement apply_right(const FaithfulState& rho, const AlgebraElement& b);

/// Modular operator b -> rho b rho^{-1}, computed entrywise in the
/// eigenbasis of rho (entry (i,j) scales by lambda_i / lambda_j). Identity
/// on commutative signatures.
AlgebraElement apply_modular(const FaithfulState& rho, const AlgebraElement& b);

/// Spectral calculus f(Delta_rho): entry (i,j) scales by f(lambda_i/lambda_j)
/// with the degenerate-ratio guard.
AlgebraElement apply_f_of_modular(const MonotoneFunction& f,
                                  const FaithfulState& rho,
                                  const AlgebraElement& b);

/// F(Delta_rho) = f(Delta_rho)^{-1} (Delta_rho + 1): entry (i,j) scales by
/// (t + 1)/f(t) at t = lambda_i/lambda_j. Throws SingularFunction if f
/// evaluates to <= 0 at a needed ratio.
AlgebraElement apply_big_F(const MonotoneFunction& f, const FaithfulState& rho,
                           const AlgebraElement& b);

}  // namespace wstar
