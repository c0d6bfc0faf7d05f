#include "wstar.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <optional>

#include "wstar/serialize.hpp"

struct wstar_state {
  wstar::FaithfulState state;
  std::optional<std::uint64_t> seed;
};

struct wstar_channel {
  wstar::Channel channel;
};

namespace {

thread_local std::string g_last_error;

int code_of(wstar::ErrorCode code) {
  using wstar::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return WSTAR_ERR_INVALID_ARGUMENT;
    case ErrorCode::ParseError: return WSTAR_ERR_PARSE;
    case ErrorCode::SignatureMismatch: return WSTAR_ERR_SIGNATURE_MISMATCH;
    case ErrorCode::ShapeMismatch: return WSTAR_ERR_SHAPE_MISMATCH;
    case ErrorCode::NotHermitian: return WSTAR_ERR_NOT_HERMITIAN;
    case ErrorCode::NotFaithful: return WSTAR_ERR_NOT_FAITHFUL;
    case ErrorCode::NotNormalized: return WSTAR_ERR_NOT_NORMALIZED;
    case ErrorCode::NotTangent: return WSTAR_ERR_NOT_TANGENT;
    case ErrorCode::NotTangentCoordinate:
      return WSTAR_ERR_NOT_TANGENT_COORDINATE;
    case ErrorCode::NotTracePreserving: return WSTAR_ERR_NOT_TRACE_PRESERVING;
    case ErrorCode::NotStochastic: return WSTAR_ERR_NOT_STOCHASTIC;
    case ErrorCode::NotUnitary: return WSTAR_ERR_NOT_UNITARY;
    case ErrorCode::NotCompletelyPositive:
      return WSTAR_ERR_NOT_COMPLETELY_POSITIVE;
    case ErrorCode::InvalidPartition: return WSTAR_ERR_INVALID_PARTITION;
    case ErrorCode::InvalidWeights: return WSTAR_ERR_INVALID_WEIGHTS;
    case ErrorCode::UnknownFunction: return WSTAR_ERR_UNKNOWN_FUNCTION;
    case ErrorCode::UnvalidatedFunction:
      return WSTAR_ERR_UNVALIDATED_FUNCTION;
    case ErrorCode::SingularFunction: return WSTAR_ERR_SINGULAR_FUNCTION;
    case ErrorCode::NotFaithfulImage: return WSTAR_ERR_NOT_FAITHFUL_IMAGE;
    case ErrorCode::DegenerateDraw: return WSTAR_ERR_DEGENERATE_DRAW;
  }
  return WSTAR_ERR_INTERNAL;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const wstar::Error& e) {
    g_last_error = e.what();
    return code_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return WSTAR_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return WSTAR_ERR_INTERNAL;
  }
}

int require(bool ok, const char* message) {
  if (ok) return WSTAR_OK;
  g_last_error = message;
  return WSTAR_ERR_INVALID_ARGUMENT;
}

std::vector<std::string> function_pool(const std::string& f) {
  if (f == "all") return wstar::FunctionCatalog::builtin().names();
  return {wstar::FunctionCatalog::builtin().get(f).name()};
}

}  // namespace

extern "C" {

const char* wstar_version(void) { return "0.1.0"; }

const char* wstar_strerror(int code) {
  switch (code) {
    case WSTAR_OK: return "Ok";
    case WSTAR_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case WSTAR_ERR_PARSE: return "ParseError";
    case WSTAR_ERR_SIGNATURE_MISMATCH: return "SignatureMismatch";
    case WSTAR_ERR_SHAPE_MISMATCH: return "ShapeMismatch";
    case WSTAR_ERR_NOT_HERMITIAN: return "NotHermitian";
    case WSTAR_ERR_NOT_FAITHFUL: return "NotFaithful";
    case WSTAR_ERR_NOT_NORMALIZED: return "NotNormalized";
    case WSTAR_ERR_NOT_TANGENT: return "NotTangent";
    case WSTAR_ERR_NOT_TANGENT_COORDINATE: return "NotTangentCoordinate";
    case WSTAR_ERR_NOT_TRACE_PRESERVING: return "NotTracePreserving";
    case WSTAR_ERR_NOT_STOCHASTIC: return "NotStochastic";
    case WSTAR_ERR_NOT_UNITARY: return "NotUnitary";
    case WSTAR_ERR_NOT_COMPLETELY_POSITIVE: return "NotCompletelyPositive";
    case WSTAR_ERR_INVALID_PARTITION: return "InvalidPartition";
    case WSTAR_ERR_INVALID_WEIGHTS: return "InvalidWeights";
    case WSTAR_ERR_UNKNOWN_FUNCTION: return "UnknownFunction";
    case WSTAR_ERR_UNVALIDATED_FUNCTION: return "UnvalidatedFunction";
    case WSTAR_ERR_SINGULAR_FUNCTION: return "SingularFunction";
    case WSTAR_ERR_NOT_FAITHFUL_IMAGE: return "NotFaithfulImage";
    case WSTAR_ERR_DEGENERATE_DRAW: return "DegenerateDraw";
    default: return "Internal";
  }
}

const char* wstar_last_error(void) { return g_last_error.c_str(); }

void wstar_string_free(char* s) { std::free(s); }

int wstar_state_random(const char* sig, uint64_t seed, wstar_state** out) {
  if (int rc = require(sig && out, "null argument")) return rc;
  return guarded([&] {
    auto handle = std::make_unique<wstar_state>();
    handle->state =
        wstar::random_faithful_state(wstar::Signature::parse(sig), seed);
    handle->seed = seed;
    *out = handle.release();
    return WSTAR_OK;
  });
}

int wstar_state_from_json(const char* json, wstar_state** out) {
  if (int rc = require(json && out, "null argument")) return rc;
  return guarded([&] {
    auto handle = std::make_unique<wstar_state>();
    handle->state = wstar::state_from_json(wstar::parse_json(json));
    *out = handle.release();
    return WSTAR_OK;
  });
}

int wstar_state_to_json(const wstar_state* state, char** json_out) {
  if (int rc = require(state && json_out, "null argument")) return rc;
  return guarded([&] {
    *json_out = dup_string(wstar::state_to_json(state->state).dump());
    return WSTAR_OK;
  });
}

void wstar_state_free(wstar_state* state) { delete state; }

int wstar_channel_random(const char* source_sig, const char* target_sig,
                         int kraus_count, uint64_t seed, wstar_channel** out) {
  if (int rc = require(source_sig && target_sig && out, "null argument"))
    return rc;
  return guarded([&] {
    auto handle = std::make_unique<wstar_channel>();
    handle->channel = wstar::random_channel(
        wstar::Signature::parse(source_sig),
        wstar::Signature::parse(target_sig), kraus_count, seed);
    *out = handle.release();
    return WSTAR_OK;
  });
}

int wstar_channel_from_json(const char* json, wstar_channel** out) {
  if (int rc = require(json && out, "null argument")) return rc;
  return guarded([&] {
    auto handle = std::make_unique<wstar_channel>();
    handle->channel = wstar::channel_from_json(wstar::parse_json(json));
    *out = handle.release();
    return WSTAR_OK;
  });
}

int wstar_channel_to_json(const wstar_channel* channel, char** json_out) {
  if (int rc = require(channel && json_out, "null argument")) return rc;
  return guarded([&] {
    *json_out = dup_string(wstar::channel_to_json(channel->channel).dump());
    return WSTAR_OK;
  });
}

int wstar_channel_is_faithful(const wstar_channel* channel, int* faithful) {
  if (int rc = require(channel && faithful, "null argument")) return rc;
  return guarded([&] {
    *faithful = wstar::is_faithful(channel->channel) ? 1 : 0;
    return WSTAR_OK;
  });
}

void wstar_channel_free(wstar_channel* channel) { delete channel; }

int wstar_catalog_json(char** json_out) {
  if (int rc = require(json_out != nullptr, "null argument")) return rc;
  return guarded([&] {
    *json_out = dup_string(wstar::catalog_to_json().dump());
    return WSTAR_OK;
  });
}

int wstar_gram_json(const wstar_state* state, const char* f, char** json_out) {
  if (int rc = require(state && f && json_out, "null argument")) return rc;
  return guarded([&] {
    const wstar::MonotoneFunction& fn =
        wstar::FunctionCatalog::builtin().get(f);
    wstar::GramReport report = wstar::gram(fn, state->state);
    report.state_seed = state->seed;
    *json_out = dup_string(wstar::gram_report_to_json(report).dump());
    return WSTAR_OK;
  });
}

int wstar_verify_two_form(const char* sig, const char* f, int trials,
                          uint64_t seed, double tol, char** json_out,
                          int* violations) {
  if (int rc = require(sig && f && json_out && violations, "null argument"))
    return rc;
  return guarded([&] {
    const wstar::SuiteReport report = wstar::two_form_suite(
        wstar::Signature::parse(sig), function_pool(f), trials, seed,
        tol > 0.0 ? tol : 1e-9);
    *violations = static_cast<int>(report.violations);
    *json_out = dup_string(wstar::suite_report_to_json(report).dump());
    return WSTAR_OK;
  });
}

int wstar_verify_cencov(int n, const char* f, int trials, uint64_t seed,
                        double tol, char** json_out, int* violations) {
  if (int rc = require(f && json_out && violations, "null argument"))
    return rc;
  return guarded([&] {
    const wstar::SuiteReport report = wstar::cencov_suite(
        n, function_pool(f), trials, seed, tol > 0.0 ? tol : 1e-10);
    *violations = static_cast<int>(report.violations);
    *json_out = dup_string(wstar::suite_report_to_json(report).dump());
    return WSTAR_OK;
  });
}

int wstar_verify_monotonicity(const char* sig, const char* f, int trials,
                              uint64_t seed, double tol, int kraus_min,
                              int kraus_max, char** json_out,
                              int* violations) {
  if (int rc = require(sig && f && json_out && violations, "null argument"))
    return rc;
  return guarded([&] {
    const wstar::SuiteReport report = wstar::monotonicity_suite(
        wstar::Signature::parse(sig), function_pool(f), trials, seed,
        tol > 0.0 ? tol : wstar::kDefectTol, kraus_min, kraus_max);
    *violations = static_cast<int>(report.violations);
    *json_out = dup_string(wstar::suite_report_to_json(report).dump());
    return WSTAR_OK;
  });
}

int wstar_verify_invariance(const char* kind, const char* f, int trials,
                            uint64_t seed, double tol, char** json_out,
                            int* violations) {
  if (int rc = require(kind && f && json_out && violations, "null argument"))
    return rc;
  return guarded([&] {
    const wstar::SuiteReport report = wstar::invariance_suite(
        kind, function_pool(f), trials, seed, tol > 0.0 ? tol : 1e-8);
    *violations = static_cast<int>(report.violations);
    *json_out = dup_string(wstar::suite_report_to_json(report).dump());
    return WSTAR_OK;
  });
}

int wstar_search(const char* config_json, char** summary_out, char** csv_out,
                 int* violations) {
  if (int rc = require(config_json && summary_out && violations,
                       "null argument"))
    return rc;
  return guarded([&] {
    const wstar::SearchConfig cfg =
        wstar::search_config_from_json(wstar::parse_json(config_json));
    const wstar::SearchSummary summary = wstar::counterexample_search(cfg);
    *violations = static_cast<int>(summary.violations.size());
    *summary_out = dup_string(wstar::search_summary_to_json(summary).dump());
    if (csv_out) *csv_out = dup_string(wstar::search_csv(summary));
    return WSTAR_OK;
  });
}

}  // extern "C"
