#include "pinch/commands.hpp"
#include "pinch/errors.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

namespace {

void add_common(CLI::App* sub, pinch::CommandOptions& opts, std::string& out, std::string& format)
{
  sub->add_option("--config", opts.config_path, "Key-value config file");
  sub->add_option("--seed", opts.seed, "Master seed (overrides the config)");
  sub->add_option("--out", out, "Output path (stdout when omitted)");
  sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Covert pinching-antenna beamforming experiments"};
  app.require_subcommand(1);

  pinch::CommandOptions opts;
  std::string out;
  std::string format = "csv";

  auto* swsp = app.add_subcommand("swsp", "Single-waveguide single-antenna solve on the fixed scenario");
  auto* mwmp = app.add_subcommand("mwmp", "Multi-waveguide TwinPSO solve on the fixed scenario");
  auto* bench = app.add_subcommand("bench", "Monte Carlo comparison of every scheme");
  auto* sweep = app.add_subcommand("sweep", "Parameter sweep over Monte Carlo scenarios");
  auto* pattern = app.add_subcommand("pattern", "Normalized beam-gain grid of a solution");
  auto* converge = app.add_subcommand("converge", "Convergence trace of a solver");
  for (auto* sub : {swsp, mwmp, bench, sweep, pattern, converge})
    add_common(sub, opts, out, format);

  bench->add_option("--schemes", opts.schemes, "Schemes to run")->delimiter(',');
  sweep->add_option("--schemes", opts.schemes, "Schemes to run")->delimiter(',');
  sweep->add_option("--variable", opts.variable, "target_error_rate, power_budget or uncertainty_radius");
  sweep->add_option("--values", opts.values, "Comma-separated sweep values")->delimiter(',');
  pattern->add_option("--case", opts.which, "swsp or mwmp");
  converge->add_option("--case", opts.which, "swsp or mwmp");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: usage: " << e.what() << '\n';
    return 2;
  }

  try {
    opts.format = pinch::parse_format(format);
    std::string payload;
    if (swsp->parsed())
      payload = pinch::cmd_swsp(opts);
    else if (mwmp->parsed())
      payload = pinch::cmd_mwmp(opts);
    else if (bench->parsed())
      payload = pinch::cmd_bench(opts);
    else if (sweep->parsed())
      payload = pinch::cmd_sweep(opts);
    else if (pattern->parsed())
      payload = pinch::cmd_pattern(opts);
    else
      payload = pinch::cmd_converge(opts);

    if (out.empty())
      std::fwrite(payload.data(), 1, payload.size(), stdout);
    else
      pinch::write_file(out, payload);
  } catch (const pinch::Error& e) {
    std::cerr << "error: " << e.kind() << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
