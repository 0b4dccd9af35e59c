#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

namespace ofdma {

std::string version_string();

const nlohmann::json& config_schema();
const nlohmann::json& summary_schema();

// Checks `doc` against the subset of JSON Schema used by the bundled schemas
// (type, enum, required, properties, additionalProperties, items, minItems,
// minimum, exclusiveMinimum). Throws ConfigError naming the offending path.
void validate_against_schema(const nlohmann::json& doc, const nlohmann::json& schema,
                             const std::string& path = "$");

struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<unsigned> threads;
  bool bits = false;
};

// Validates the config, applies overrides, runs the experiment, writes its
// CSV files and summary.json into the output directory, and returns the summary.
nlohmann::json run_experiment(nlohmann::json config, const RunOptions& opts = {});

} // namespace ofdma
