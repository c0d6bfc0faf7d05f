#include "wstar/serialize.hpp"

namespace wstar {

namespace {

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty())
    fail(ErrorCode::ParseError, "matrix must be a nonempty array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) fail(ErrorCode::ParseError, "matrix rows must be nonempty");
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      fail(ErrorCode::ParseError, "ragged matrix rows");
    for (std::size_t k = 0; k < cols; ++k) {
      const Json& e = j[i][k];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
          !e[1].is_number())
        fail(ErrorCode::ParseError, "matrix entries must be [re, im] pairs");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

}  // namespace

Json signature_to_json(const Signature& sig) {
  Json j = Json::array();
  for (int n : sig.dims()) j.push_back(n);
  return j;
}

Signature signature_from_json(const Json& j) {
  if (!j.is_array() || j.empty())
    fail(ErrorCode::ParseError, "signature must be a nonempty array");
  std::vector<int> dims;
  for (const Json& e : j) {
    if (!e.is_number_integer())
      fail(ErrorCode::ParseError, "signature entries must be integers");
    dims.push_back(e.get<int>());
  }
  try {
    return Signature(dims);
  } catch (const Error& e) {
    fail(ErrorCode::ParseError, e.what());
  }
}

Json state_to_json(const FaithfulState& rho) {
  Json j;
  j["signature"] = signature_to_json(rho.signature());
  Json blocks = Json::array();
  for (const Matrix& b : rho.blocks()) blocks.push_back(matrix_to_json(b));
  j["blocks"] = std::move(blocks);
  return j;
}

FaithfulState state_from_json(const Json& j, double floor) {
  if (!j.is_object() || !j.contains("signature") || !j.contains("blocks"))
    fail(ErrorCode::ParseError, "state needs 'signature' and 'blocks'");
  const Signature sig = signature_from_json(j["signature"]);
  if (!j["blocks"].is_array() ||
      static_cast<int>(j["blocks"].size()) != sig.blocks())
    fail(ErrorCode::ParseError, "one block matrix per signature entry");
  std::vector<Matrix> blocks;
  for (const Json& b : j["blocks"]) blocks.push_back(matrix_from_json(b));
  return make_state(sig, std::move(blocks), floor);
}

Json channel_to_json(const Channel& ch) {
  Json j;
  j["source"] = signature_to_json(ch.source());
  j["target"] = signature_to_json(ch.target());
  Json comps = Json::array();
  for (int k = 0; k < ch.source().blocks(); ++k)
    for (int l = 0; l < ch.target().blocks(); ++l) {
      const auto& list = ch.kraus(k, l);
      if (list.empty()) continue;
      Json comp;
      comp["k"] = k;
      comp["l"] = l;
      Json kraus = Json::array();
      for (const Matrix& m : list) kraus.push_back(matrix_to_json(m));
      comp["kraus"] = std::move(kraus);
      comps.push_back(std::move(comp));
    }
  j["components"] = std::move(comps);
  return j;
}

Channel channel_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("source") || !j.contains("target") ||
      !j.contains("components") || !j["components"].is_array())
    fail(ErrorCode::ParseError,
         "channel needs 'source', 'target' and 'components'");
  const Signature src = signature_from_json(j["source"]);
  const Signature tgt = signature_from_json(j["target"]);
  std::vector<std::vector<std::vector<Matrix>>> components(
      static_cast<std::size_t>(src.blocks()));
  for (auto& row : components)
    row.resize(static_cast<std::size_t>(tgt.blocks()));
  for (const Json& comp : j["components"]) {
    if (!comp.is_object() || !comp.contains("k") || !comp.contains("l") ||
        !comp.contains("kraus") || !comp["kraus"].is_array())
      fail(ErrorCode::ParseError, "component needs 'k', 'l', 'kraus'");
    const int k = comp["k"].get<int>();
    const int l = comp["l"].get<int>();
    if (k < 0 || k >= src.blocks() || l < 0 || l >= tgt.blocks())
      fail(ErrorCode::ParseError, "component indices out of range");
    for (const Json& m : comp["kraus"])
      components[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)]
          .push_back(matrix_from_json(m));
  }
  return make_channel(src, tgt, std::move(components));
}

Json gram_report_to_json(const GramReport& report) {
  Json j;
  j["signature"] = signature_to_json(report.signature);
  j["f"] = report.function;
  j["basis_size"] = report.basis_size;
  Json g = Json::array();
  for (Eigen::Index r = 0; r < report.gram.rows(); ++r)
    for (Eigen::Index c = 0; c < report.gram.cols(); ++c)
      g.push_back(report.gram(r, c));
  j["gram"] = std::move(g);
  j["min_eig"] = report.min_eig;
  if (report.state_seed) j["state_seed"] = *report.state_seed;
  return j;
}

Json monotonicity_report_to_json(const MonotonicityReport& report) {
  Json j;
  j["source"] = signature_to_json(report.source);
  j["target"] = signature_to_json(report.target);
  j["f"] = report.function;
  j["defect"] = report.defect;
  j["tolerance"] = report.tolerance;
  j["verdict"] = report.violation ? "violation" : "pass";
  if (report.kraus_count) j["kraus_count"] = *report.kraus_count;
  if (report.channel_seed) j["channel_seed"] = *report.channel_seed;
  if (report.state_seed) j["state_seed"] = *report.state_seed;
  if (report.trial) j["trial"] = *report.trial;
  return j;
}

Json search_config_to_json(const SearchConfig& cfg) {
  Json j;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["tolerance"] = cfg.tolerance;
  j["workers"] = cfg.workers;
  j["kraus_min"] = cfg.kraus_min;
  j["kraus_max"] = cfg.kraus_max;
  Json sigs = Json::array();
  for (const Signature& s : cfg.signatures) sigs.push_back(signature_to_json(s));
  j["signatures"] = std::move(sigs);
  j["functions"] = cfg.functions;
  return j;
}

SearchConfig search_config_from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorCode::ParseError, "config must be an object");
  SearchConfig cfg;
  try {
    if (j.contains("trials")) cfg.trials = j["trials"].get<std::uint64_t>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("tolerance")) cfg.tolerance = j["tolerance"].get<double>();
    if (j.contains("workers")) cfg.workers = j["workers"].get<int>();
    if (j.contains("kraus_min")) cfg.kraus_min = j["kraus_min"].get<int>();
    if (j.contains("kraus_max")) cfg.kraus_max = j["kraus_max"].get<int>();
    if (j.contains("signatures")) {
      cfg.signatures.clear();
      for (const Json& s : j["signatures"])
        cfg.signatures.push_back(signature_from_json(s));
    }
    if (j.contains("functions")) {
      cfg.functions.clear();
      for (const Json& f : j["functions"])
        cfg.functions.push_back(f.get<std::string>());
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrorCode::ParseError, e.what());
  }
  return cfg;
}

Json search_summary_to_json(const SearchSummary& summary) {
  Json j;
  j["config"] = search_config_to_json(summary.config);
  j["trials"] = summary.trials;
  j["skipped"] = summary.skipped;
  Json viol = Json::array();
  for (const TrialRecord& rec : summary.violations) {
    Json v;
    v["trial"] = rec.trial;
    v["source"] = rec.source;
    v["target"] = rec.target;
    v["f"] = rec.function;
    v["kraus_count"] = rec.kraus_count;
    v["channel_seed"] = rec.channel_seed;
    v["state_seed"] = rec.state_seed;
    v["defect"] = rec.defect;
    viol.push_back(std::move(v));
  }
  j["violations"] = std::move(viol);
  j["min_defect_overall"] = summary.min_defect_overall;
  j["wall_time"] = summary.wall_time;
  return j;
}

Json suite_report_to_json(const SuiteReport& report) {
  Json j;
  j["suite"] = report.suite;
  j["trials"] = report.trials;
  if (report.suite == "monotonicity") {
    j["skipped"] = report.skipped;
    j["min_defect"] = report.min_defect;
  } else {
    j["max_deviation"] = report.max_deviation;
  }
  j["tolerance"] = report.tolerance;
  j["violations"] = report.violations;
  return j;
}

Json catalog_to_json() {
  Json j;
  Json fns = Json::array();
  for (const MonotoneFunction& f : FunctionCatalog::builtin().all()) {
    Json e;
    e["name"] = f.name();
    e["formula"] = f.formula();
    e["f1"] = f.value_at_one();
    fns.push_back(std::move(e));
  }
  j["functions"] = std::move(fns);
  return j;
}

Json parse_json(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(ErrorCode::ParseError, "malformed JSON");
  return j;
}

}  // namespace wstar
