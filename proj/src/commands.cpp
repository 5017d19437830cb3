#include "pinch/commands.hpp"

#include "pinch/errors.hpp"
#include "pinch/mwmp.hpp"
#include "pinch/swsp.hpp"

#include <cstdio>

namespace pinch {

ExperimentConfig resolve_config(const CommandOptions& opts)
{
  ExperimentConfig cfg = opts.config_path ? load_config(*opts.config_path) : ExperimentConfig{};
  if (opts.seed)
    cfg.seed = *opts.seed;
  return cfg;
}

std::vector<double> default_sweep_values(std::string_view variable)
{
  if (variable == "target_error_rate")
    return {0.80, 0.85, 0.90, 0.95};
  if (variable == "power_budget")
    return {10.0, 15.0, 20.0, 25.0, 30.0};
  if (variable == "uncertainty_radius")
    return {0.1, 0.5, 1.0, 1.5, 2.0};
  // Defer to the standard unknown-variable message.
  (void)with_sweep_value(ExperimentConfig{}, variable, 0.0);
  return {};
}

namespace {

std::vector<Scheme> schemes_from(const CommandOptions& opts)
{
  if (opts.schemes.empty())
    return all_schemes();
  std::vector<Scheme> out;
  for (const auto& s : opts.schemes)
    out.push_back(parse_scheme(s));
  return out;
}

Scheme which_case(const CommandOptions& opts)
{
  if (opts.which == "swsp")
    return Scheme::Swsp;
  if (opts.which == "mwmp")
    return Scheme::Mwmp;
  throw ConfigError("unknown case '" + opts.which + "'; valid cases: swsp, mwmp");
}

std::string single_run(const CommandOptions& opts, Scheme scheme)
{
  const auto cfg = resolve_config(opts);
  const auto res = run_scheme(scheme, cfg.fixed_scenario(), cfg, cfg.seed);
  if (!res.covert)
    throw Error("soundness", std::string(scheme_name(scheme)) + " solution violated covertness");
  const SweepRecord row{std::string(scheme_name(scheme)), "none", 0.0, 0, res.rate, res.power, cfg.seed};
  return serialize(std::span<const SweepRecord>(&row, 1), opts.format);
}

} // namespace

std::string cmd_swsp(const CommandOptions& opts)
{
  return single_run(opts, Scheme::Swsp);
}

std::string cmd_mwmp(const CommandOptions& opts)
{
  return single_run(opts, Scheme::Mwmp);
}

std::string cmd_bench(const CommandOptions& opts)
{
  const auto cfg = resolve_config(opts);
  const auto schemes = schemes_from(opts);
  return serialize(run_benchmark(cfg, schemes), opts.format);
}

std::string cmd_sweep(const CommandOptions& opts)
{
  const auto cfg = resolve_config(opts);
  const auto schemes = schemes_from(opts);
  const auto values = opts.values.empty() ? default_sweep_values(opts.variable) : opts.values;
  return serialize(run_sweep(cfg, opts.variable, values, schemes), opts.format);
}

std::string cmd_converge(const CommandOptions& opts)
{
  const auto cfg = resolve_config(opts);
  return serialize(run_convergence(cfg, which_case(opts)), opts.format);
}

std::string pattern_csv(const GainGrid& grid)
{
  std::string out = "x,y,gain_normalized\n";
  char buf[96];
  for (std::size_t iy = 0; iy < grid.ys.size(); ++iy) {
    for (std::size_t ix = 0; ix < grid.xs.size(); ++ix) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", grid.xs[ix], grid.ys[iy], grid.at(ix, iy));
      out += buf;
    }
  }
  return out;
}

std::string cmd_pattern(const CommandOptions& opts)
{
  const auto cfg = resolve_config(opts);
  const auto sc = cfg.fixed_scenario();
  if (which_case(opts) == Scheme::Swsp) {
    const auto sol = swsp::solve(sc, cfg.power_step);
    if (!sol.feasible)
      throw InfeasibleCovertness("no covert SWSP placement exists for the fixed scenario");
    const auto geom = PassGeometry::single(sc.geometry.height, sc.geometry.length);
    const cplx one{1.0, 0.0};
    const auto beam = make_beam(std::span<const cplx>(&one, 1), sol.power);
    return pattern_csv(beam_pattern_grid(PinchLayout{{sol.x}}, beam, cfg.pattern, geom, sc.pc, true));
  }
  auto pso = cfg.pso;
  pso.seed = derive_seed(cfg.seed, 1); // same stream as the mwmp subcommand
  const auto sol = mwmp::solve(sc, pso);
  const auto beam = make_beam(sol.weights, sol.power);
  return pattern_csv(beam_pattern_grid(PinchLayout{sol.x_init}, beam, cfg.pattern, sc.geometry, sc.pc, true));
}

} // namespace pinch
