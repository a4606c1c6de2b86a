#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sgh/config.hpp"
#include "sgh/errors.hpp"
#include "sgh/experiments.hpp"

namespace {

struct Options {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::string suite = "all";
};

std::optional<std::filesystem::path> out_dir(const Options& o) {
  if (o.out.empty()) return std::nullopt;
  return std::filesystem::path(o.out);
}

int finish(const sgh::CommandResult& result, bool print_report) {
  std::cout << result.summary;
  if (print_report) std::cout << sgh::render_report(result.report);
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetric generalized hybrid mappings: membership, cone fitting and iteration experiments"};
  app.require_subcommand(1);
  Options opts;

  auto* check = app.add_subcommand("check-class", "check parameter conditions and class membership");
  auto* fit = app.add_subcommand("fit-cone", "search for admissible parameters over sampled pairs");
  auto* run = app.add_subcommand("iterate", "run picard, mann or ishikawa iterates and write a trace");
  for (auto* sub : {check, fit, run}) {
    sub->add_option("--config", opts.config, "experiment config (JSON)")->required();
    sub->add_option("--out", opts.out, "output directory");
    sub->add_option("--seed", opts.seed, "override the config seed");
  }
  auto* verify = app.add_subcommand("verify-theorems", "run the built-in property suites");
  verify->add_option("--suite", opts.suite, "suite name or 'all'");
  verify->add_option("--out", opts.out, "output directory");
  verify->add_option("--seed", opts.seed, "seed for every suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*verify) {
      return finish(sgh::cmd_verify_theorems(opts.suite, opts.seed.value_or(sgh::kDefaultSeed), out_dir(opts)),
                    false);
    }
    const sgh::ExperimentConfig config = sgh::load_config(opts.config, opts.seed);
    if (*check) return finish(sgh::cmd_check_class(config, out_dir(opts)), !out_dir(opts));
    if (*fit) return finish(sgh::cmd_fit_cone(config, out_dir(opts)), !out_dir(opts));
    return finish(sgh::cmd_iterate(config, out_dir(opts)), false);
  } catch (const sgh::Error& e) {
    std::cerr << "sghctl: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "sghctl: " << e.what() << "\n";
    return 1;
  }
}
