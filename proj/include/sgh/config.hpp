#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sgh/hybrid_class.hpp"
#include "sgh/iteration.hpp"
#include "sgh/mappings.hpp"

namespace sgh {

/// A parsed experiment description. See docs/config.md for the schema.
struct ExperimentConfig {
  explicit ExperimentConfig(Mapping m) : mapping(std::move(m)) {}

  std::optional<std::string> kind;
  std::uint64_t seed = 0;
  Mapping mapping;
  std::optional<SghParams> params;
  /// Set when params came from a named class.
  std::optional<std::string> params_name;
  SamplePlan samples;
  /// Pairs added to the sampled ones by check-class and fit-cone.
  std::vector<std::pair<Vector, Vector>> extra_pairs;
  double tolerance = 1e-9;
  ConeFitOptions cone;
  Scheme scheme = Scheme::ishikawa;
  Schedules schedules;
  std::optional<Vector> x0;
  StopRule stop;
  bool verbose = false;
  nlohmann::json echo;
};

/// Builds a config from JSON. `seed_override` replaces the config's seed; a
/// config without a seed is rejected unless an override is given.
/// Throws ConfigError (or another sgh::Error) on any schema violation.
ExperimentConfig parse_config(const nlohmann::json& doc,
                              std::optional<std::uint64_t> seed_override = std::nullopt);

/// Reads and parses a JSON file; I/O and syntax errors become ConfigError.
ExperimentConfig load_config(const std::filesystem::path& path,
                             std::optional<std::uint64_t> seed_override = std::nullopt);

Schedule parse_schedule(const nlohmann::json& node);
nlohmann::json schedule_to_json(const Schedule& schedule);

}  // namespace sgh
