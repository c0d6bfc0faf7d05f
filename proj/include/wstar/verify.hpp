#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wstar/channels.hpp"
#include "wstar/metrics.hpp"

namespace wstar {

inline constexpr double kDefectTol = 1e-8;

/// Gram matrix of the pulled-back metric: entry (k,l) is the metric at the
/// image state evaluated on the pushforwards of the source tangent basis.
GramReport pullback_gram(const MonotoneFunction& f, const Channel& ch,
                         const FaithfulState& sigma);

struct MonotonicityReport {
  Signature source;
  Signature target;
  std::string function;
  double defect = 0.0;       // min eigenvalue of Gram_source - Gram_pullback
  double tolerance = kDefectTol;
  bool violation = false;    // defect < -tolerance
  std::optional<std::uint64_t> state_seed;
  std::optional<std::uint64_t> channel_seed;
  std::optional<int> kraus_count;
  std::optional<std::uint64_t> trial;
};

/// Monotonicity of the metric under the channel at one state: the defect is
/// the smallest eigenvalue of Gram_source - Gram_pullback; a verdict of
/// violation requires defect < -tol.
MonotonicityReport monotonicity_check(const MonotoneFunction& f,
                                      const Channel& ch,
                                      const FaithfulState& sigma,
                                      double tol = kDefectTol);

struct InvarianceReport {
  std::string function;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool violation = false;
};

/// Exact metric preservation under a congruent embedding: entrywise maximum
/// deviation between source Gram and pulled-back Gram.
InvarianceReport invariance_check(const MonotoneFunction& f,
                                  const Channel& embed,
                                  const FaithfulState& sigma,
                                  double tol = 1e-8);

/// Commutative reduction: over random interior points of the n-simplex, the
/// Gram of the metric equals (1/f(1)) times the Fisher-Rao Gram on the same
/// basis. Returns the maximum entrywise deviation seen.
double cencov_reduction_check(const MonotoneFunction& f, int n, int trials,
                              std::uint64_t seed);

struct SearchConfig {
  std::vector<Signature> signatures = {
      Signature({2}), Signature({3}),       Signature({1, 1}),
      Signature({1, 1, 1}), Signature({1, 2}), Signature({2, 2})};
  std::vector<std::string> functions = {"sld", "rld", "kmb", "wy",
                                        "geometric"};
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  int kraus_min = 1;
  int kraus_max = 4;
  double tolerance = kDefectTol;
  int workers = 1;
};

struct TrialRecord {
  std::uint64_t trial = 0;
  std::string source;
  std::string target;
  std::string function;
  int kraus_count = 0;
  std::uint64_t channel_seed = 0;
  std::uint64_t state_seed = 0;
  bool skipped = false;  // non-faithful image
  double defect = 0.0;
  bool violation = false;
};

struct SearchSummary {
  SearchConfig config;
  std::uint64_t trials = 0;
  std::uint64_t skipped = 0;
  std::vector<TrialRecord> violations;
  double min_defect_overall = 0.0;
  double wall_time = 0.0;  // seconds; excluded from determinism comparisons
  std::vector<TrialRecord> records;  // all trials, by index
};

/// Randomized counterexample sweep over the configured pools. Trial i draws
/// its RNG stream from (seed, i), so summaries are reproducible and
/// independent of the worker count; trials whose image state is not
/// faithful are skipped and counted.
SearchSummary counterexample_search(const SearchConfig& cfg);

/// Like counterexample_search but with an explicit function, bypassing the
/// catalog; used for injecting deliberately broken functions in tests.
SearchSummary counterexample_search_with(const SearchConfig& cfg,
                                         const MonotoneFunction& f);

/// CSV of per-trial defects: trial,signature,f,defect,verdict.
std::string search_csv(const SearchSummary& summary);

/// --- Scaled verification suites driven by the CLI ---

struct SuiteReport {
  std::string suite;
  std::uint64_t trials = 0;
  std::uint64_t skipped = 0;
  double tolerance = 0.0;
  double max_deviation = 0.0;   // deviation-style suites
  double min_defect = 0.0;      // monotonicity
  std::uint64_t violations = 0;
};

/// Trace form vs GNS form on random states and tangent pairs; deviations are
/// relative to max(|value|, sqrt(G(a,a) G(b,b))).
SuiteReport two_form_suite(const Signature& sig,
                           const std::vector<std::string>& functions,
                           int trials, std::uint64_t seed, double tol = 1e-9);

SuiteReport cencov_suite(int n, const std::vector<std::string>& functions,
                         int trials, std::uint64_t seed, double tol = 1e-10);

/// Random square channels (source = target = sig) against random states.
SuiteReport monotonicity_suite(const Signature& sig,
                               const std::vector<std::string>& functions,
                               int trials, std::uint64_t seed,
                               double tol = kDefectTol, int kraus_min = 1,
                               int kraus_max = 4);

/// Random congruent embeddings; kind is "classical", "quantum" or "both".
SuiteReport invariance_suite(const std::string& kind,
                             const std::vector<std::string>& functions,
                             int trials, std::uint64_t seed,
                             double tol = 1e-8);

}  // namespace wstar
