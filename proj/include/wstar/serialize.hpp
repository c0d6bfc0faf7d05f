#pragma once

#include <json.hpp>

#include "wstar/verify.hpp"

namespace wstar {

/// Insertion-ordered JSON so serialized reports are byte-stable.
using Json = nlohmann::ordered_json;

Json signature_to_json(const Signature& sig);
Signature signature_from_json(const Json& j);

/// State format: {"signature":[...],"blocks":[block,...]} where a block is
/// rows of [re, im] entry pairs.
Json state_to_json(const FaithfulState& rho);
FaithfulState state_from_json(const Json& j,
                              double floor = kFaithfulnessFloor);

/// Channel format: {"source":[...],"target":[...],"components":[{"k":..,
/// "l":..,"kraus":[matrix,...]},...]} with the same matrix encoding.
Json channel_to_json(const Channel& ch);
Channel channel_from_json(const Json& j);

Json gram_report_to_json(const GramReport& report);

Json monotonicity_report_to_json(const MonotonicityReport& report);

Json search_config_to_json(const SearchConfig& cfg);
SearchConfig search_config_from_json(const Json& j);

Json search_summary_to_json(const SearchSummary& summary);

Json suite_report_to_json(const SuiteReport& report);

Json catalog_to_json();

/// Parses text into JSON, translating parse failures into ParseError.
Json parse_json(const std::string& text);

}  // namespace wstar
