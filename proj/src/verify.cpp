#include "wstar/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <thread>

#include "wstar/rng.hpp"

namespace wstar {

GramReport pullback_gram(const MonotoneFunction& f, const Channel& ch,
                         const FaithfulState& sigma) {
  check_same_signature(ch.source(), sigma.signature(), "pullback_gram");
  const FaithfulState image = apply(ch, sigma);
  const std::vector<TangentVector> basis = tangent_basis(ch.source());
  std::vector<TangentVector> pushed;
  pushed.reserve(basis.size());
  for (const TangentVector& u : basis) pushed.push_back(apply(ch, u));
  GramReport report = gram(f, image, pushed);
  report.signature = ch.source();
  return report;
}

MonotonicityReport monotonicity_check(const MonotoneFunction& f,
                                      const Channel& ch,
                                      const FaithfulState& sigma, double tol) {
  if (!(tol > 0.0))
    fail(ErrorCode::InvalidArgument, "tolerance must be positive");
  const GramReport source = gram(f, sigma);
  const GramReport pulled = pullback_gram(f, ch, sigma);
  Eigen::MatrixXd diff = source.gram - pulled.gram;
  diff = 0.5 * (diff + diff.transpose()).eval();
  MonotonicityReport report;
  report.source = ch.source();
  report.target = ch.target();
  report.function = f.name();
  report.tolerance = tol;
  if (diff.rows() > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(diff,
                                                      Eigen::EigenvaluesOnly);
    report.defect = es.eigenvalues().minCoeff();
  }
  report.violation = report.defect < -tol;
  return report;
}

InvarianceReport invariance_check(const MonotoneFunction& f,
                                  const Channel& embed,
                                  const FaithfulState& sigma, double tol) {
  const GramReport source = gram(f, sigma);
  const GramReport pulled = pullback_gram(f, embed, sigma);
  InvarianceReport report;
  report.function = f.name();
  report.tolerance = tol;
  report.max_deviation = (source.gram - pulled.gram).cwiseAbs().maxCoeff();
  report.violation = report.max_deviation > tol;
  return report;
}

double cencov_reduction_check(const MonotoneFunction& f, int n, int trials,
                              std::uint64_t seed) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "need n >= 2");
  const Signature sig(std::vector<int>(static_cast<std::size_t>(n), 1));
  const std::vector<TangentVector> basis = tangent_basis(sig);
  const double scale = 1.0 / f.value_at_one();
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const FaithfulState rho =
        random_faithful_state(sig, Rng::derive(seed, static_cast<std::uint64_t>(t)));
    std::vector<double> p(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) p[static_cast<std::size_t>(j)] = rho.block(j)(0, 0).real();
    const GramReport g = gram(f, rho, basis);
    for (std::size_t k = 0; k < basis.size(); ++k)
      for (std::size_t l = 0; l < basis.size(); ++l) {
        std::vector<double> u(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
          u[static_cast<std::size_t>(j)] = basis[k].block(j)(0, 0).real();
          w[static_cast<std::size_t>(j)] = basis[l].block(j)(0, 0).real();
        }
        const double fr = fisher_rao(p, u, w);
        worst = std::max(worst, std::abs(g.gram(static_cast<Eigen::Index>(k),
                                                static_cast<Eigen::Index>(l)) -
                                         scale * fr));
      }
  }
  return worst;
}

namespace {

TrialRecord run_trial(const SearchConfig& cfg, std::uint64_t index,
                      const MonotoneFunction* injected) {
  Rng rng(Rng::derive(cfg.seed, index));
  TrialRecord rec;
  rec.trial = index;
  const Signature& src =
      cfg.signatures[rng.below(cfg.signatures.size())];
  const Signature& tgt =
      cfg.signatures[rng.below(cfg.signatures.size())];
  rec.source = src.to_string();
  rec.target = tgt.to_string();
  rec.kraus_count =
      cfg.kraus_min +
      static_cast<int>(rng.below(
          static_cast<std::uint64_t>(cfg.kraus_max - cfg.kraus_min + 1)));
  const MonotoneFunction& f =
      injected ? *injected
               : FunctionCatalog::builtin().get(
                     cfg.functions[rng.below(cfg.functions.size())]);
  rec.function = f.name();
  rec.channel_seed = rng.next();
  rec.state_seed = rng.next();
  try {
    const Channel ch =
        random_channel(src, tgt, rec.kraus_count, rec.channel_seed);
    const FaithfulState rho = random_faithful_state(src, rec.state_seed);
    const MonotonicityReport rep = monotonicity_check(f, ch, rho, cfg.tolerance);
    rec.defect = rep.defect;
    rec.violation = rep.violation;
  } catch (const Error& e) {
    // A dimension-reducing draw can be unrealizable (DegenerateDraw) or
    // land outside the faithful cone; both are skips, not failures.
    if (e.code() != ErrorCode::NotFaithfulImage &&
        e.code() != ErrorCode::DegenerateDraw)
      throw;
    rec.skipped = true;
  }
  return rec;
}

SearchSummary run_search(const SearchConfig& cfg,
                         const MonotoneFunction* injected) {
  if (cfg.trials < 1) fail(ErrorCode::InvalidArgument, "trials must be >= 1");
  if (cfg.signatures.empty())
    fail(ErrorCode::InvalidArgument, "signature pool is empty");
  if (!injected && cfg.functions.empty())
    fail(ErrorCode::InvalidArgument, "function pool is empty");
  if (cfg.kraus_min < 1 || cfg.kraus_max < cfg.kraus_min)
    fail(ErrorCode::InvalidArgument, "bad kraus_count range");
  if (!(cfg.tolerance > 0.0))
    fail(ErrorCode::InvalidArgument, "tolerance must be positive");
  if (cfg.workers < 1)
    fail(ErrorCode::InvalidArgument, "workers must be >= 1");
  if (!injected)
    for (const std::string& name : cfg.functions)
      FunctionCatalog::builtin().get(name);  // fail early on unknown names

  const auto start = std::chrono::steady_clock::now();
  SearchSummary summary;
  summary.config = cfg;
  summary.trials = cfg.trials;
  summary.records.resize(cfg.trials);

  const int workers =
      std::min<std::uint64_t>(static_cast<std::uint64_t>(cfg.workers), cfg.trials);
  auto work = [&](std::uint64_t first) {
    for (std::uint64_t i = first; i < cfg.trials;
         i += static_cast<std::uint64_t>(workers))
      summary.records[i] = run_trial(cfg, i, injected);
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
      pool.emplace_back(work, static_cast<std::uint64_t>(w));
    for (auto& th : pool) th.join();
  }

  double min_defect = std::numeric_limits<double>::infinity();
  for (const TrialRecord& rec : summary.records) {
    if (rec.skipped) {
      ++summary.skipped;
      continue;
    }
    min_defect = std::min(min_defect, rec.defect);
    if (rec.violation) summary.violations.push_back(rec);
  }
  summary.min_defect_overall =
      std::isfinite(min_defect) ? min_defect : 0.0;
  std::sort(summary.violations.begin(), summary.violations.end(),
            [](const TrialRecord& a, const TrialRecord& b) {
              if (a.defect != b.defect) return a.defect < b.defect;
              return a.trial < b.trial;
            });
  summary.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return summary;
}

}  // namespace

SearchSummary counterexample_search(const SearchConfig& cfg) {
  return run_search(cfg, nullptr);
}

SearchSummary counterexample_search_with(const SearchConfig& cfg,
                                         const MonotoneFunction& f) {
  return run_search(cfg, &f);
}

std::string search_csv(const SearchSummary& summary) {
  std::ostringstream out;
  out << "trial,signature,f,defect,verdict\n";
  for (const TrialRecord& rec : summary.records) {
    out << rec.trial << ",\"" << rec.source << "->" << rec.target << "\","
        << rec.function << ",";
    if (rec.skipped) {
      out << ",skip\n";
      continue;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", rec.defect);
    out << buf << "," << (rec.violation ? "violation" : "pass") << "\n";
  }
  return out.str();
}

SuiteReport two_form_suite(const Signature& sig,
                           const std::vector<std::string>& functions,
                           int trials, std::uint64_t seed, double tol) {
  SuiteReport report;
  report.suite = "two-form";
  report.trials = static_cast<std::uint64_t>(trials);
  report.tolerance = tol;
  const auto& catalog = FunctionCatalog::builtin();
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t s = Rng::derive(seed, static_cast<std::uint64_t>(t));
    const FaithfulState rho = random_faithful_state(sig, s);
    const TangentVector a = random_tangent(sig, Rng::derive(s, 1));
    const TangentVector b = random_tangent(sig, Rng::derive(s, 2));
    const AlgebraElement v = anticommutator_solve(rho, a);
    const AlgebraElement w = anticommutator_solve(rho, b);
    for (const std::string& name : functions) {
      const MonotoneFunction& f = catalog.get(name);
      const double tf = metric_trace_form(f, rho, a, b);
      const double gf = metric_gns_form(f, rho, v, w);
      const double scale = std::max(
          std::abs(tf), std::sqrt(metric_trace_form(f, rho, a, a) *
                                  metric_trace_form(f, rho, b, b)));
      const double dev = std::abs(tf - gf) / std::max(scale, 1e-300);
      report.max_deviation = std::max(report.max_deviation, dev);
      if (dev > tol) ++report.violations;
    }
  }
  return report;
}

SuiteReport cencov_suite(int n, const std::vector<std::string>& functions,
                         int trials, std::uint64_t seed, double tol) {
  SuiteReport report;
  report.suite = "cencov";
  report.trials = static_cast<std::uint64_t>(trials);
  report.tolerance = tol;
  const auto& catalog = FunctionCatalog::builtin();
  for (const std::string& name : functions) {
    const double dev =
        cencov_reduction_check(catalog.get(name), n, trials, seed);
    report.max_deviation = std::max(report.max_deviation, dev);
    if (dev > tol) ++report.violations;
  }
  return report;
}

SuiteReport monotonicity_suite(const Signature& sig,
                               const std::vector<std::string>& functions,
                               int trials, std::uint64_t seed, double tol,
                               int kraus_min, int kraus_max) {
  SearchConfig cfg;
  cfg.signatures = {sig};
  cfg.functions = functions;
  cfg.trials = static_cast<std::uint64_t>(trials);
  cfg.seed = seed;
  cfg.tolerance = tol;
  cfg.kraus_min = kraus_min;
  cfg.kraus_max = kraus_max;
  const SearchSummary summary = counterexample_search(cfg);
  SuiteReport report;
  report.suite = "monotonicity";
  report.trials = summary.trials;
  report.skipped = summary.skipped;
  report.tolerance = tol;
  report.min_defect = summary.min_defect_overall;
  report.violations = summary.violations.size();
  return report;
}

SuiteReport invariance_suite(const std::string& kind,
                             const std::vector<std::string>& functions,
                             int trials, std::uint64_t seed, double tol) {
  if (kind != "classical" && kind != "quantum" && kind != "both")
    fail(ErrorCode::InvalidArgument,
         "kind must be classical, quantum or both");
  SuiteReport report;
  report.suite = "invariance";
  report.tolerance = tol;
  const auto& catalog = FunctionCatalog::builtin();

  auto run_one = [&](const EmbeddingPair& pair, const FaithfulState& rho) {
    for (const std::string& name : functions) {
      const InvarianceReport rep =
          invariance_check(catalog.get(name), pair.embed, rho, tol);
      report.max_deviation = std::max(report.max_deviation, rep.max_deviation);
      if (rep.violation) ++report.violations;
    }
    ++report.trials;
  };

  if (kind == "classical" || kind == "both") {
    for (int t = 0; t < trials; ++t) {
      Rng rng(Rng::derive(seed, 0x10000 + static_cast<std::uint64_t>(t)));
      const int n = 2 + static_cast<int>(rng.below(3));  // 2..4 cells
      const int m = n + static_cast<int>(rng.below(
                            static_cast<std::uint64_t>(8 - n + 1)));  // n..8
      std::vector<int> cell_of(static_cast<std::size_t>(m));
      for (int j = 0; j < n; ++j) cell_of[static_cast<std::size_t>(j)] = j;
      for (int j = n; j < m; ++j)
        cell_of[static_cast<std::size_t>(j)] = static_cast<int>(rng.below(n));
      std::vector<double> weights(static_cast<std::size_t>(m));
      std::vector<double> cell_sum(static_cast<std::size_t>(n), 0.0);
      for (int j = 0; j < m; ++j) {
        const double g = rng.normal();
        weights[static_cast<std::size_t>(j)] = g * g + 0.1;
        cell_sum[static_cast<std::size_t>(cell_of[static_cast<std::size_t>(j)])] +=
            weights[static_cast<std::size_t>(j)];
      }
      for (int j = 0; j < m; ++j)
        weights[static_cast<std::size_t>(j)] /=
            cell_sum[static_cast<std::size_t>(cell_of[static_cast<std::size_t>(j)])];
      const EmbeddingPair pair =
          congruent_embedding_classical(n, cell_of, weights);
      const FaithfulState rho = random_faithful_state(
          Signature(std::vector<int>(static_cast<std::size_t>(n), 1)),
          rng.next());
      run_one(pair, rho);
    }
  }
  if (kind == "quantum" || kind == "both") {
    for (int t = 0; t < trials; ++t) {
      Rng rng(Rng::derive(seed, 0x20000 + static_cast<std::uint64_t>(t)));
      const int n = 2 + static_cast<int>(rng.below(2));  // system dim 2..3
      const int d = 2 + static_cast<int>(rng.below(2));  // ancilla dim 2..3
      const Matrix u = random_unitary(rng, n * d);
      const FaithfulState anc =
          random_faithful_state(Signature({d}), rng.next());
      const EmbeddingPair pair = congruent_embedding_quantum(u, anc);
      const FaithfulState rho =
          random_faithful_state(Signature({n}), rng.next());
      run_one(pair, rho);
    }
  }
  return report;
}

}  // namespace wstar
