#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "splitpoint/inference.hpp"
#include "splitpoint/montecarlo.hpp"
#include "splitpoint/sample.hpp"

namespace splitpoint {

inline constexpr const char* kToolName = "splitpoint";
inline constexpr const char* kToolVersion = "0.1.0";

// JSON views of the result types. Non-finite numbers serialize as null.
nlohmann::json to_json(const SplitPointEstimate& est);
nlohmann::json to_json(const HartiganSplit& h);
nlohmann::json to_json(const InfluenceTerms& t);
nlohmann::json to_json(const SplitInference& inf);
nlohmann::json to_json(const ClusterTestResult& res);
nlohmann::json to_json(const SimulationReport& rep);

/// Report skeleton: tool name/version, command and resolved parameters.
nlohmann::json make_report(const std::string& command, nlohmann::json parameters);

/// Flattens nested objects into "a.b.c<TAB>value" lines.
std::string to_tsv(const nlohmann::json& doc);

}  // namespace splitpoint
