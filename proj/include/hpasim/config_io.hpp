#pragma once

#include "hpasim/model.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>

namespace hpasim {

/// Parses a scenario document (snake_case field names, unknown fields
/// rejected) and validates it. Throws ConfigError.
ScenarioConfig config_from_json(const nlohmann::json& doc);

nlohmann::json config_to_json(const ScenarioConfig& config);

/// Throws IoError if the file cannot be read, ConfigError if it is malformed.
ScenarioConfig load_config(const std::filesystem::path& path);

void save_config(const ScenarioConfig& config, const std::filesystem::path& path);

}  // namespace hpasim
