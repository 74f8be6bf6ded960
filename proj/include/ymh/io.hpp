#pragma once

#include <string>

#include "ymh/flow.hpp"
#include "ymh/identities.hpp"
#include "ymh/stability.hpp"

#include "json.hpp"

namespace ymh {

// Binary field format: magic "YMH1", then u32 {version=1, n, points_per_axis,
// rank, p, q}, then components in lexicographic order, sites row-major,
// entries row-major, each complex as two little-endian f64 (re, im).
void write_field_binary(const std::string& path, const EndForm& f);
/// side_length is not part of the header and must be supplied by the caller.
EndForm read_field_binary(const std::string& path, double side_length = 1.0);

// Structured-text field format for small fields.
nlohmann::json field_to_json(const EndForm& f);
EndForm field_from_json(const nlohmann::json& j);
void write_field_json(const std::string& path, const EndForm& f);
EndForm read_field_json(const std::string& path);

nlohmann::json to_json(const PairReport& r);
nlohmann::json to_json(const StabilityReport& r);
nlohmann::json to_json(const IdentityReport& r);
nlohmann::json to_json(const McResiduals& r);

/// CSV with columns t,ymh,holomorphy,integrability,k_herm,dt.
std::string trajectory_csv(const FlowTrajectory& t);
/// CSV with columns identity,resolution,residual,rate.
std::string identity_csv(const std::vector<IdentityReport>& reports);

void write_text(const std::string& path, const std::string& content);
std::string read_text(const std::string& path);

}  // namespace ymh
