#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sgh/config.hpp"

namespace sgh {

/// Outcome of one subcommand. `exit_code` is 0 when every check passed and
/// 2 when some mathematical check failed; configuration problems surface as
/// exceptions instead.
struct CommandResult {
  int exit_code = 0;
  nlohmann::json report;
  /// Human-readable summary for the terminal.
  std::string summary;
  /// Files written under the output directory.
  std::vector<std::filesystem::path> files;
};

/// Conditions, membership and (with declared fixed points) quasi-nonexpansiveness.
/// Passes when the mapping is a member and the quasi-nonexpansive check holds.
CommandResult cmd_check_class(const ExperimentConfig& config,
                              const std::optional<std::filesystem::path>& out = std::nullopt);

/// Feasible parameters or an infeasibility certificate over the sampled pairs.
CommandResult cmd_fit_cone(const ExperimentConfig& config,
                           const std::optional<std::filesystem::path>& out = std::nullopt);

/// Runs the configured scheme from x0, writing trace.csv and report.json to
/// `out` (the current directory when unset).
CommandResult cmd_iterate(const ExperimentConfig& config,
                          const std::optional<std::filesystem::path>& out = std::nullopt);

inline constexpr std::uint64_t kDefaultSeed = 1;

/// Suite names accepted by cmd_verify_theorems, "all" excluded.
const std::vector<std::string>& suite_names();

/// Runs one suite or all of them over the built-in zoo. The aggregate report
/// is written to `out`/verify-report.json when `out` is set. Throws
/// ConfigError for an unknown suite name.
CommandResult cmd_verify_theorems(const std::string& suite, std::uint64_t seed = kDefaultSeed,
                                  const std::optional<std::filesystem::path>& out = std::nullopt);

/// Pretty-printed JSON with sorted keys and a trailing newline.
std::string render_report(const nlohmann::json& report);

nlohmann::json to_json(const Vector& v);

}  // namespace sgh
