#pragma once

#include <optional>
#include <string>

#include "ymh/state.hpp"

#include "json.hpp"

namespace ymh {

/// Parse failures throw ScenarioError (CLI exit 2); field-file mismatches
/// throw DataError (exit 3).
struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Scenario {
  TorusGrid grid;
  int rank = 1;
  nlohmann::json pair;                        // preset object
  std::optional<nlohmann::json> deformation;  // preset object, if present
  double tol_classify = 1e-8;
  double tol_stability = 1e-8;
  double tol_solver = 1e-8;
  std::string out_path;
  std::string out_format = "json";
  std::string canonical;  // sorted-key dump of the full scenario, hashed into outputs
};

Scenario scenario_from_json(const nlohmann::json& j);
Scenario load_scenario(const std::string& path);

HitchinPairState build_pair(const Scenario& sc);
DeformationPair build_deformation(const Scenario& sc, const HitchinPairState& base);

/// FNV-1a 64-bit hash of the canonical scenario text, as 16 hex digits.
std::string scenario_hash_hex(const Scenario& sc);

/// {"scenario_hash": ..., "tool_version": ...} stamp merged into every output.
nlohmann::json provenance(const Scenario& sc);

}  // namespace ymh
