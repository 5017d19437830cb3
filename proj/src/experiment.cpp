#include "pinch/experiment.hpp"

#include "pinch/benchmarks.hpp"
#include "pinch/errors.hpp"
#include "pinch/mwmp.hpp"
#include "pinch/swsp.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <thread>

namespace pinch {

std::string_view scheme_name(Scheme s)
{
  switch (s) {
  case Scheme::Swsp: return "swsp";
  case Scheme::Mwmp: return "mwmp";
  case Scheme::PassZf: return "pass_zf";
  case Scheme::PassMrt: return "pass_mrt";
  case Scheme::MimoZf: return "mimo_zf";
  case Scheme::MimoMrt: return "mimo_mrt";
  }
  return "unknown";
}

std::vector<Scheme> all_schemes()
{
  return {Scheme::Swsp, Scheme::Mwmp, Scheme::PassZf, Scheme::PassMrt, Scheme::MimoZf, Scheme::MimoMrt};
}

Scheme parse_scheme(std::string_view name)
{
  std::string valid;
  for (auto s : all_schemes()) {
    if (scheme_name(s) == name)
      return s;
    valid += (valid.empty() ? "" : ", ") + std::string(scheme_name(s));
  }
  throw ConfigError("unknown scheme '" + std::string(name) + "'; valid schemes: " + valid);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index)
{
  // splitmix64 finalizer over a golden-ratio stride
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn)
{
  std::size_t threads = workers > 0 ? static_cast<std::size_t>(workers)
                                    : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i)
      fn(i);
    return;
  }

  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += threads)
          fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool)
    th.join();
  for (const auto& e : errors) {
    if (e)
      std::rethrow_exception(e);
  }
}

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi)
{
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

mwmp::PsoParams pso_for(const ExperimentConfig& cfg, std::uint64_t trial_seed)
{
  auto p = cfg.pso;
  p.seed = derive_seed(trial_seed, 1);
  return p;
}

bool sampled_covert(std::span<const cplx> weights, double power, const Scenario& sc,
                    const std::function<CVec(const Vec3&)>& channel)
{
  const double budget = sc.gain_budget();
  for (const auto& r : sc.willie_samples()) {
    if (power * std::norm(pinch::apply(channel(r), weights)) > budget * (1.0 + 1e-9))
      return false;
  }
  return true;
}

std::string fmt17(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

} // namespace

std::vector<UserPair> sample_user_pairs(const ExperimentConfig& cfg, int n, std::uint64_t seed)
{
  if (n < 1)
    throw InvalidArgument("need at least one scenario");
  std::vector<UserPair> pairs(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    std::mt19937_64 rng(derive_seed(seed, i));
    UserPair p;
    do {
      p.bob = {uniform(rng, cfg.region_x_min, cfg.region_x_max), uniform(rng, cfg.region_y_min, cfg.region_y_max), 0.0};
      p.willie = {uniform(rng, cfg.region_x_min, cfg.region_x_max),
                  uniform(rng, cfg.region_y_min, cfg.region_y_max), 0.0};
    } while (std::hypot(p.bob.x - p.willie.x, p.bob.y - p.willie.y) < cfg.min_user_separation);
    pairs[i] = p;
  }
  return pairs;
}

std::vector<Scenario> sample_scenarios(const ExperimentConfig& cfg, int n, std::uint64_t seed)
{
  std::vector<Scenario> out;
  for (const auto& p : sample_user_pairs(cfg, n, seed))
    out.push_back(cfg.scenario(p.bob, p.willie));
  return out;
}

std::vector<Vec3> dense_disk(const WillieUncertainty& wu, int rings, int spokes)
{
  std::vector<Vec3> pts{Vec3{wu.centre.x, wu.centre.y, 0.0}};
  for (int k = 1; k <= rings; ++k) {
    const double r = wu.radius * static_cast<double>(k) / static_cast<double>(rings);
    for (int s = 0; s < spokes; ++s) {
      const double a = 2.0 * std::numbers::pi * static_cast<double>(s) / static_cast<double>(spokes);
      pts.push_back({wu.centre.x + r * std::cos(a), wu.centre.y + r * std::sin(a), 0.0});
    }
  }
  return pts;
}

bool swsp_covert(double x, double power, const Scenario& sc)
{
  const Vec3 pa{x, 0.0, sc.geometry.height};
  const double target = 1.0 - sc.covertness.rho;
  for (const auto& r : dense_disk(sc.willie, 25, 48)) {
    const double d = distance(pa, r);
    const double received = power * sc.pc.eta / (d * d);
    if (optimal_detection(received, sc.willie_noise).min_error < target - 1e-9)
      return false;
  }
  return true;
}

TrialResult run_scheme(Scheme scheme, const Scenario& sc, const ExperimentConfig& cfg, std::uint64_t trial_seed)
{
  TrialResult res;
  switch (scheme) {
  case Scheme::Swsp: {
    const auto sol = swsp::solve(sc, cfg.power_step);
    res.rate = sol.rate;
    res.power = sol.power;
    res.covert = !sol.feasible || swsp_covert(sol.x, sol.power, sc);
    break;
  }
  case Scheme::Mwmp: {
    const auto sol = mwmp::solve(sc, pso_for(cfg, trial_seed));
    res.rate = sol.rate;
    res.power = sol.power;
    const PinchLayout layout{sol.x_init};
    res.covert = sampled_covert(sol.weights, sol.power, sc, [&](const Vec3& r) {
      return effective_channel(layout, r, sc.geometry, sc.pc);
    });
    break;
  }
  default: {
    const auto kind = scheme == Scheme::PassZf    ? bench::Kind::PassZf
                      : scheme == Scheme::PassMrt ? bench::Kind::PassMrt
                      : scheme == Scheme::MimoZf  ? bench::Kind::MimoZf
                                                  : bench::Kind::MimoMrt;
    try {
      const auto out = bench::evaluate(kind, sc);
      res.rate = out.rate;
      res.power = out.power;
      const bool mimo = kind == bench::Kind::MimoZf || kind == bench::Kind::MimoMrt;
      const auto layout = bench::heuristic_pass_layout(sc.bob, sc.geometry);
      res.covert = sampled_covert(out.weights, out.power, sc, [&](const Vec3& r) {
        return mimo ? bench::ula_channel(r, sc.geometry.num_waveguides, sc.geometry.height, sc.pc)
                    : effective_channel(layout, r, sc.geometry, sc.pc);
      });
    } catch (const NullSpaceEmpty&) {
      res = TrialResult{};
    }
    break;
  }
  }
  return res;
}

ExperimentConfig with_sweep_value(const ExperimentConfig& cfg, std::string_view variable, double value)
{
  ExperimentConfig out = cfg;
  if (variable == "target_error_rate")
    out.rho = 1.0 - value;
  else if (variable == "power_budget")
    out.max_power = dbm_to_watts(value);
  else if (variable == "uncertainty_radius")
    out.uncertainty_radius = value;
  else {
    std::string valid;
    for (auto v : kSweepVariables)
      valid += (valid.empty() ? "" : ", ") + std::string(v);
    throw ConfigError("unknown sweep variable '" + std::string(variable) + "'; valid variables: " + valid);
  }
  out.validate();
  return out;
}

std::vector<SweepRecord> mean_rows(std::span<const SweepRecord> rows)
{
  struct Acc
  {
    double rate = 0.0;
    double power = 0.0;
    long long n = 0;
  };
  // Preserve first-appearance order of (scheme, variable, value).
  std::vector<SweepRecord> keys;
  std::vector<Acc> accs;
  for (const auto& r : rows) {
    if (r.trial < 0)
      continue;
    auto it = std::find_if(keys.begin(), keys.end(), [&](const SweepRecord& k) {
      return k.scheme == r.scheme && k.sweep_variable == r.sweep_variable && k.sweep_value == r.sweep_value;
    });
    std::size_t idx;
    if (it == keys.end()) {
      keys.push_back(r);
      accs.emplace_back();
      idx = keys.size() - 1;
    } else {
      idx = static_cast<std::size_t>(it - keys.begin());
    }
    accs[idx].rate += r.covert_rate;
    accs[idx].power += r.p_opt;
    ++accs[idx].n;
  }
  std::vector<SweepRecord> out;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    SweepRecord m = keys[i];
    m.trial = -1;
    m.covert_rate = accs[i].rate / static_cast<double>(accs[i].n);
    m.p_opt = accs[i].power / static_cast<double>(accs[i].n);
    m.seed = 0;
    out.push_back(m);
  }
  return out;
}

namespace {

std::vector<SweepRecord> run_trials(const ExperimentConfig& cfg, std::string_view variable,
                                    std::span<const double> values, std::span<const Scheme> schemes)
{
  const auto pairs = sample_user_pairs(cfg, cfg.monte_carlo_trials, cfg.seed);
  const std::size_t n_trials = pairs.size();
  const std::size_t n_jobs = values.size() * schemes.size() * n_trials;
  std::vector<SweepRecord> rows(n_jobs);

  std::vector<ExperimentConfig> cfgs;
  for (double v : values)
    cfgs.push_back(variable == "none" ? cfg : with_sweep_value(cfg, variable, v));

  parallel_for(n_jobs, cfg.workers, [&](std::size_t job) {
    const std::size_t trial = job % n_trials;
    const std::size_t s_idx = (job / n_trials) % schemes.size();
    const std::size_t v_idx = job / (n_trials * schemes.size());
    const auto& c = cfgs[v_idx];
    const auto sc = c.scenario(pairs[trial].bob, pairs[trial].willie);
    const auto seed = derive_seed(cfg.seed, trial);
    const auto res = run_scheme(schemes[s_idx], sc, c, seed);
    if (!res.covert)
      throw Error("soundness", "scheme " + std::string(scheme_name(schemes[s_idx])) +
                                   " violated covertness on trial " + std::to_string(trial));
    rows[job] = SweepRecord{std::string(scheme_name(schemes[s_idx])), std::string(variable), values[v_idx],
                            static_cast<long long>(trial), res.rate, res.power, seed};
  });
  return rows;
}

} // namespace

std::vector<SweepRecord> run_sweep(const ExperimentConfig& cfg, std::string_view variable,
                                   std::span<const double> values, std::span<const Scheme> schemes)
{
  (void)with_sweep_value(cfg, variable, values.empty() ? 0.0 : values.front());
  if (values.empty() || schemes.empty())
    throw ConfigError("sweep needs at least one value and one scheme");
  auto rows = run_trials(cfg, variable, values, schemes);
  auto means = mean_rows(rows);
  rows.insert(rows.end(), means.begin(), means.end());
  return rows;
}

std::vector<SweepRecord> run_benchmark(const ExperimentConfig& cfg, std::span<const Scheme> schemes)
{
  if (schemes.empty())
    throw ConfigError("benchmark needs at least one scheme");
  const double none = 0.0;
  auto rows = run_trials(cfg, "none", std::span<const double>(&none, 1), schemes);
  auto means = mean_rows(rows);
  rows.insert(rows.end(), means.begin(), means.end());
  return rows;
}

std::vector<SweepRecord> run_convergence(const ExperimentConfig& cfg, Scheme which)
{
  const auto sc = cfg.fixed_scenario();
  std::vector<SweepRecord> rows;
  if (which == Scheme::Swsp) {
    const auto sol = swsp::solve(sc, cfg.power_step);
    for (std::size_t t = 0; t < sol.trace.size(); ++t)
      rows.push_back({"swsp", "iteration", static_cast<double>(t + 1), -1, sol.trace[t],
                      static_cast<double>(t + 1) * cfg.power_step, cfg.seed});
    return rows;
  }
  if (which != Scheme::Mwmp)
    throw ConfigError("convergence traces exist only for swsp and mwmp");

  const auto runs = static_cast<std::size_t>(cfg.convergence_runs);
  std::vector<mwmp::Solution> sols(runs);
  parallel_for(runs, cfg.workers, [&](std::size_t r) { sols[r] = mwmp::solve(sc, pso_for(cfg, derive_seed(cfg.seed, r))); });
  for (std::size_t r = 0; r < runs; ++r) {
    for (std::size_t t = 0; t < sols[r].trace.size(); ++t)
      rows.push_back({"mwmp", "iteration", static_cast<double>(t + 1), static_cast<long long>(r), sols[r].trace[t],
                      sols[r].power, derive_seed(cfg.seed, r)});
  }
  auto means = mean_rows(rows);
  rows.insert(rows.end(), means.begin(), means.end());
  return rows;
}

Format parse_format(std::string_view name)
{
  if (name == "csv")
    return Format::Csv;
  if (name == "json")
    return Format::Json;
  throw ConfigError("unknown format '" + std::string(name) + "'; valid formats: csv, json");
}

namespace {

constexpr const char* kHeader = "scheme,sweep_variable,sweep_value,trial,covert_rate_bps_hz,p_opt_watts,seed";

} // namespace

std::string to_csv(std::span<const SweepRecord> records)
{
  std::string out = kHeader;
  out += '\n';
  for (const auto& r : records) {
    out += r.scheme + ',' + r.sweep_variable + ',' + fmt17(r.sweep_value) + ',' + std::to_string(r.trial) + ',' +
           fmt17(r.covert_rate) + ',' + fmt17(r.p_opt) + ',' + std::to_string(r.seed) + '\n';
  }
  return out;
}

std::string to_json(std::span<const SweepRecord> records)
{
  std::string out = "[";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    out += i == 0 ? "\n" : ",\n";
    out += "  {\"scheme\": " + nlohmann::json(r.scheme).dump() +
           ", \"sweep_variable\": " + nlohmann::json(r.sweep_variable).dump() +
           ", \"sweep_value\": " + fmt17(r.sweep_value) + ", \"trial\": " + std::to_string(r.trial) +
           ", \"covert_rate_bps_hz\": " + fmt17(r.covert_rate) + ", \"p_opt_watts\": " + fmt17(r.p_opt) +
           ", \"seed\": " + std::to_string(r.seed) + "}";
  }
  out += records.empty() ? "]\n" : "\n]\n";
  return out;
}

std::vector<SweepRecord> parse_csv(std::string_view text)
{
  std::vector<SweepRecord> out;
  bool header = true;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string line(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.empty())
      continue;
    if (header) {
      if (line != kHeader)
        throw InvalidArgument("unexpected CSV header: " + line);
      header = false;
      continue;
    }
    std::vector<std::string> f;
    std::size_t start = 0;
    for (std::size_t pos; (pos = line.find(',', start)) != std::string::npos; start = pos + 1)
      f.push_back(line.substr(start, pos - start));
    f.push_back(line.substr(start));
    if (f.size() != 7)
      throw InvalidArgument("CSV row must have 7 fields: " + line);
    out.push_back({f[0], f[1], std::stod(f[2]), std::stoll(f[3]), std::stod(f[4]), std::stod(f[5]),
                   std::stoull(f[6])});
  }
  return out;
}

std::vector<SweepRecord> parse_json(std::string_view text)
{
  const auto doc = nlohmann::json::parse(text);
  std::vector<SweepRecord> out;
  for (const auto& o : doc) {
    out.push_back({o.at("scheme").get<std::string>(), o.at("sweep_variable").get<std::string>(),
                   o.at("sweep_value").get<double>(), o.at("trial").get<long long>(),
                   o.at("covert_rate_bps_hz").get<double>(), o.at("p_opt_watts").get<double>(),
                   o.at("seed").get<std::uint64_t>()});
  }
  return out;
}

std::string serialize(std::span<const SweepRecord> records, Format format)
{
  return format == Format::Csv ? to_csv(records) : to_json(records);
}

void write_file(const std::filesystem::path& path, std::string_view payload)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  if (!out)
    throw IoError("failed writing '" + path.string() + "'");
}

void emit(std::span<const SweepRecord> records, const std::filesystem::path& path, Format format)
{
  write_file(path, serialize(records, format));
}

} // namespace pinch
