// Command-line harness over the wstar C API.
//
// Exit codes: 0 success / no violation, 1 verified violation found,
// 2 usage or validation error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "wstar.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { wstar_string_free(ptr); }
  std::string str() const { return ptr ? std::string(ptr) : std::string(); }
};

int usage_error(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return kExitUsage;
}

int api_error(int rc) {
  std::cerr << "error: " << wstar_strerror(rc);
  const std::string detail = wstar_last_error();
  if (!detail.empty()) std::cerr << " (" << detail << ")";
  std::cerr << "\n";
  return kExitUsage;
}

std::uint64_t effective_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("WSTAR_METRIC_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      // fall through to the default below
    }
  }
  return 0;
}

bool write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text << "\n";
    return true;
  }
  std::ofstream out(path);
  if (!out) return false;
  out << text << "\n";
  return out.good();
}

/// Flat key=value config file ('#' comments). Values land in the search
/// config JSON; command-line flags override afterwards.
bool load_config_file(const std::string& path, Json& cfg, std::string& error) {
  std::ifstream in(path);
  if (!in) {
    error = "cannot open config file '" + path + "'";
    return false;
  }
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      if (a == std::string::npos) return std::string();
      const auto b = s.find_last_not_of(" \t\r");
      return s.substr(a, b - a + 1);
    };
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      error = "line " + std::to_string(lineno) + ": expected key=value";
      return false;
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    try {
      if (key == "trials" || key == "seed") {
        cfg[key] = std::stoull(value);
      } else if (key == "tolerance") {
        cfg[key] = std::stod(value);
      } else if (key == "workers" || key == "kraus_min" || key == "kraus_max") {
        cfg[key] = std::stoi(value);
      } else if (key == "signatures") {
        // Semicolon-separated signatures, comma-separated block dims:
        // signatures = 2;1,1;1,2
        Json sigs = Json::array();
        std::stringstream ss(value);
        std::string sig;
        while (std::getline(ss, sig, ';')) {
          Json dims = Json::array();
          std::stringstream ds(trim(sig));
          std::string dim;
          while (std::getline(ds, dim, ',')) dims.push_back(std::stoi(trim(dim)));
          sigs.push_back(std::move(dims));
        }
        cfg[key] = std::move(sigs);
      } else if (key == "functions") {
        Json fns = Json::array();
        std::stringstream ss(value);
        std::string fn;
        while (std::getline(ss, fn, ',')) fns.push_back(trim(fn));
        cfg[key] = std::move(fns);
      } else {
        error = "line " + std::to_string(lineno) + ": unknown key '" + key + "'";
        return false;
      }
    } catch (const std::exception&) {
      error = "line " + std::to_string(lineno) + ": bad value for '" + key + "'";
      return false;
    }
  }
  return true;
}

std::string gram_csv(const Json& report) {
  std::ostringstream out;
  const int m = report["basis_size"].get<int>();
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) {
      if (c) out << ",";
      out << report["gram"][static_cast<std::size_t>(r * m + c)].dump();
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monotone information metrics on direct sums of matrix "
               "algebras: evaluation, verification, counterexample search"};
  app.require_subcommand(1);

  // ---- catalog ----
  CLI::App* catalog = app.add_subcommand(
      "catalog", "List the operator monotone function catalog");

  // ---- metric eval ----
  CLI::App* metric = app.add_subcommand("metric", "Metric evaluation");
  metric->require_subcommand(1);
  CLI::App* eval = metric->add_subcommand(
      "eval", "Gram matrix of a metric over the canonical tangent basis");
  std::string eval_sig = "2";
  std::string eval_f = "sld";
  std::optional<std::uint64_t> eval_seed;
  std::string eval_state_file;
  std::string eval_out;
  std::string eval_format = "json";
  eval->add_option("--sig", eval_sig, "Signature, e.g. 2 or 1,2");
  eval->add_option("--f", eval_f, "Catalog function name");
  eval->add_option("--seed", eval_seed,
                   "Random state seed (falls back to WSTAR_METRIC_SEED, then 0)");
  eval->add_option("--state-file", eval_state_file,
                   "Read the state from a JSON file instead of sampling");
  eval->add_option("--out", eval_out, "Write the report here instead of stdout");
  eval->add_option("--format", eval_format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  // ---- verify ----
  CLI::App* verify = app.add_subcommand("verify", "Scaled verification suites");
  verify->require_subcommand(1);

  CLI::App* two_form = verify->add_subcommand(
      "two-form", "Trace form vs GNS form agreement on random tangent pairs");
  std::string tf_sig = "2";
  std::string tf_f = "all";
  int tf_trials = 100;
  std::optional<std::uint64_t> tf_seed;
  double tf_tol = 1e-9;
  std::string tf_out;
  two_form->add_option("--sig", tf_sig, "Signature");
  two_form->add_option("--f", tf_f, "Catalog function name or 'all'");
  two_form->add_option("--trials", tf_trials, "Random tuples")->check(CLI::PositiveNumber);
  two_form->add_option("--seed", tf_seed, "Master seed");
  two_form->add_option("--tol", tf_tol, "Relative tolerance")->check(CLI::PositiveNumber);
  two_form->add_option("--out", tf_out, "Report file");

  CLI::App* cencov = verify->add_subcommand(
      "cencov", "Commutative reduction to (1/f(1)) x Fisher-Rao");
  int cv_n = 3;
  std::string cv_f = "all";
  int cv_trials = 100;
  std::optional<std::uint64_t> cv_seed;
  double cv_tol = 1e-10;
  std::string cv_out;
  cencov->add_option("--n", cv_n, "Simplex size")->check(CLI::Range(2, 64));
  cencov->add_option("--f", cv_f, "Catalog function name or 'all'");
  cencov->add_option("--trials", cv_trials, "Random interior points")->check(CLI::PositiveNumber);
  cencov->add_option("--seed", cv_seed, "Master seed");
  cencov->add_option("--tol", cv_tol, "Entrywise tolerance")->check(CLI::PositiveNumber);
  cencov->add_option("--out", cv_out, "Report file");

  CLI::App* mono = verify->add_subcommand(
      "monotonicity", "Metric contraction under random channels (source = target = sig)");
  std::string mn_sig = "2";
  std::string mn_f = "all";
  int mn_trials = 200;
  std::optional<std::uint64_t> mn_seed;
  double mn_tol = 1e-8;
  int mn_kmin = 1, mn_kmax = 4;
  std::string mn_out;
  mono->add_option("--sig", mn_sig, "Signature");
  mono->add_option("--f", mn_f, "Catalog function name or 'all'");
  mono->add_option("--trials", mn_trials, "Random channel/state pairs")->check(CLI::PositiveNumber);
  mono->add_option("--seed", mn_seed, "Master seed");
  mono->add_option("--tol", mn_tol, "Defect tolerance")->check(CLI::PositiveNumber);
  mono->add_option("--kraus-min", mn_kmin, "Smallest Kraus count per block pair")->check(CLI::PositiveNumber);
  mono->add_option("--kraus-max", mn_kmax, "Largest Kraus count per block pair")->check(CLI::PositiveNumber);
  mono->add_option("--out", mn_out, "Report file");

  CLI::App* invariance = verify->add_subcommand(
      "invariance", "Metric preservation under congruent embeddings");
  std::string iv_kind = "both";
  std::string iv_f = "all";
  int iv_trials = 50;
  std::optional<std::uint64_t> iv_seed;
  double iv_tol = 1e-8;
  std::string iv_out;
  invariance->add_option("--kind", iv_kind, "classical, quantum or both")
      ->check(CLI::IsMember({"classical", "quantum", "both"}));
  invariance->add_option("--f", iv_f, "Catalog function name or 'all'");
  invariance->add_option("--trials", iv_trials, "Embeddings per kind")->check(CLI::PositiveNumber);
  invariance->add_option("--seed", iv_seed, "Master seed");
  invariance->add_option("--tol", iv_tol, "Entrywise tolerance")->check(CLI::PositiveNumber);
  invariance->add_option("--out", iv_out, "Report file");

  // ---- search ----
  CLI::App* search = app.add_subcommand(
      "search", "Randomized monotonicity counterexample sweep over signature "
                "and function pools");
  std::optional<std::uint64_t> se_trials;
  std::optional<std::uint64_t> se_seed;
  std::optional<double> se_tol;
  std::optional<int> se_workers;
  std::optional<int> se_kmin, se_kmax;
  std::string se_config;
  std::string se_out;
  std::string se_csv;
  search->add_option("--trials", se_trials, "Trial count (default 1000)");
  search->add_option("--seed", se_seed, "Master seed");
  search->add_option("--tol", se_tol, "Defect tolerance (default 1e-8)");
  search->add_option("--workers", se_workers, "Worker threads (default 1)");
  search->add_option("--kraus-min", se_kmin, "Smallest Kraus count");
  search->add_option("--kraus-max", se_kmax, "Largest Kraus count");
  search->add_option("--config", se_config,
                     "key=value config file; flags override file values");
  search->add_option("--out", se_out, "Summary file (default stdout)");
  search->add_option("--csv", se_csv, "Per-trial defect CSV file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      return app.exit(e);
    }
    app.exit(e);
    return kExitUsage;
  }

  if (catalog->parsed()) {
    OwnedString out;
    if (int rc = wstar_catalog_json(&out.ptr)) return api_error(rc);
    std::cout << out.str() << "\n";
    return kExitOk;
  }

  if (eval->parsed()) {
    wstar_state* state = nullptr;
    if (!eval_state_file.empty()) {
      std::ifstream in(eval_state_file);
      if (!in) return usage_error("cannot open '" + eval_state_file + "'");
      std::stringstream buf;
      buf << in.rdbuf();
      if (int rc = wstar_state_from_json(buf.str().c_str(), &state))
        return api_error(rc);
    } else {
      if (int rc = wstar_state_random(eval_sig.c_str(),
                                      effective_seed(eval_seed), &state))
        return api_error(rc);
    }
    OwnedString report;
    const int rc = wstar_gram_json(state, eval_f.c_str(), &report.ptr);
    wstar_state_free(state);
    if (rc) return api_error(rc);
    std::string text = report.str();
    if (eval_format == "csv") text = gram_csv(Json::parse(text));
    if (!write_output(text, eval_out))
      return usage_error("cannot write '" + eval_out + "'");
    return kExitOk;
  }

  auto finish_suite = [](const OwnedString& report, int violations,
                         const std::string& out_path) {
    if (!out_path.empty()) {
      if (!write_output(report.str(), out_path)) {
        std::cerr << "error: cannot write '" << out_path << "'\n";
        return kExitUsage;
      }
      std::cout << (violations ? "violations found" : "ok") << "\n";
    } else {
      std::cout << report.str() << "\n";
    }
    return violations ? kExitViolation : kExitOk;
  };

  if (two_form->parsed()) {
    OwnedString report;
    int violations = 0;
    if (int rc = wstar_verify_two_form(tf_sig.c_str(), tf_f.c_str(), tf_trials,
                                       effective_seed(tf_seed), tf_tol,
                                       &report.ptr, &violations))
      return api_error(rc);
    return finish_suite(report, violations, tf_out);
  }

  if (cencov->parsed()) {
    OwnedString report;
    int violations = 0;
    if (int rc = wstar_verify_cencov(cv_n, cv_f.c_str(), cv_trials,
                                     effective_seed(cv_seed), cv_tol,
                                     &report.ptr, &violations))
      return api_error(rc);
    return finish_suite(report, violations, cv_out);
  }

  if (mono->parsed()) {
    OwnedString report;
    int violations = 0;
    if (int rc = wstar_verify_monotonicity(
            mn_sig.c_str(), mn_f.c_str(), mn_trials, effective_seed(mn_seed),
            mn_tol, mn_kmin, mn_kmax, &report.ptr, &violations))
      return api_error(rc);
    return finish_suite(report, violations, mn_out);
  }

  if (invariance->parsed()) {
    OwnedString report;
    int violations = 0;
    if (int rc = wstar_verify_invariance(iv_kind.c_str(), iv_f.c_str(),
                                         iv_trials, effective_seed(iv_seed),
                                         iv_tol, &report.ptr, &violations))
      return api_error(rc);
    return finish_suite(report, violations, iv_out);
  }

  if (search->parsed()) {
    Json cfg = Json::object();
    if (!se_config.empty()) {
      std::string error;
      if (!load_config_file(se_config, cfg, error)) return usage_error(error);
    }
    if (se_trials) cfg["trials"] = *se_trials;
    // Seed precedence: flag, then config file, then env fallback.
    if (se_seed)
      cfg["seed"] = *se_seed;
    else if (!cfg.contains("seed"))
      cfg["seed"] = effective_seed(std::nullopt);
    if (se_tol) cfg["tolerance"] = *se_tol;
    if (se_workers) cfg["workers"] = *se_workers;
    if (se_kmin) cfg["kraus_min"] = *se_kmin;
    if (se_kmax) cfg["kraus_max"] = *se_kmax;

    OwnedString summary;
    OwnedString csv;
    int violations = 0;
    if (int rc = wstar_search(cfg.dump().c_str(), &summary.ptr,
                              se_csv.empty() ? nullptr : &csv.ptr,
                              &violations))
      return api_error(rc);
    if (!se_csv.empty()) {
      std::ofstream out(se_csv);
      if (!out) return usage_error("cannot write '" + se_csv + "'");
      out << csv.str();
    }
    const Json parsed = Json::parse(summary.str());
    if (!se_out.empty()) {
      if (!write_output(summary.str(), se_out))
        return usage_error("cannot write '" + se_out + "'");
      std::cout << "min_defect_overall="
                << parsed["min_defect_overall"].dump()
                << " violations=" << parsed["violations"].size() << "\n";
    } else {
      std::cout << summary.str() << "\n";
    }
    return violations ? kExitViolation : kExitOk;
  }

  return usage_error("no command");
}
