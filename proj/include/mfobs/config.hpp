#pragma once

// JSON configuration document mirroring Scenario field-for-field.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "mfobs/harness.hpp"

namespace mfobs {

/// Serializes every Scenario field. Numbers round-trip exactly.
nlohmann::json scenario_to_json(const Scenario& s);

/// Parses and validates. Unknown keys, wrong types and invariant
/// violations raise ValidationError naming the dotted field path.
Scenario scenario_from_json(const nlohmann::json& doc);

/// Reads a JSON file. Throws IoError or ValidationError.
Scenario load_scenario(const std::filesystem::path& path);

nlohmann::json metrics_to_json(const Metrics& m);

}  // namespace mfobs
