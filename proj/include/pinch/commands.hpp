#pragma once

#include "pinch/config.hpp"
#include "pinch/experiment.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pinch {

/// Options shared by the CLI subcommands. Fields a subcommand does not use are
/// ignored.
struct CommandOptions
{
  std::optional<std::string> config_path;
  std::optional<std::uint64_t> seed;
  Format format = Format::Csv;
  std::string variable = "target_error_rate";
  std::vector<double> values;          // empty picks the default set for the variable
  std::vector<std::string> schemes;    // empty picks every scheme
  std::string which = "mwmp";          // pattern / converge case: swsp or mwmp
};

ExperimentConfig resolve_config(const CommandOptions& opts);

/// Default sweep values for each sweep variable.
std::vector<double> default_sweep_values(std::string_view variable);

/// Each returns the exact payload the CLI writes.
std::string cmd_swsp(const CommandOptions& opts);
std::string cmd_mwmp(const CommandOptions& opts);
std::string cmd_bench(const CommandOptions& opts);
std::string cmd_sweep(const CommandOptions& opts);
std::string cmd_pattern(const CommandOptions& opts);
std::string cmd_converge(const CommandOptions& opts);

/// x,y,gain_normalized rows for a gain grid.
std::string pattern_csv(const GainGrid& grid);

} // namespace pinch
