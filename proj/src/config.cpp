#include "pinch/config.hpp"

#include "pinch/errors.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

namespace pinch {

double dbm_to_watts(double dbm)
{
  return std::pow(10.0, (dbm - 30.0) / 10.0);
}

double db_to_linear(double db)
{
  return std::pow(10.0, db / 10.0);
}

namespace {

double watts_to_dbm(double w)
{
  return 10.0 * std::log10(w) + 30.0;
}

double parse_double(std::string_view key, std::string_view text)
{
  const std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v))
    throw ConfigError("key '" + std::string(key) + "': expected a number, got '" + s + "'");
  return v;
}

long long parse_integer(std::string_view key, std::string_view text)
{
  const std::string s(text);
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size())
    throw ConfigError("key '" + std::string(key) + "': expected an integer, got '" + s + "'");
  return v;
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view text)
{
  const std::string s(text);
  char* end = nullptr;
  if (s.empty() || s.front() == '-')
    throw ConfigError("key '" + std::string(key) + "': expected an unsigned integer, got '" + s + "'");
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size())
    throw ConfigError("key '" + std::string(key) + "': expected an unsigned integer, got '" + s + "'");
  return v;
}

std::string fmt(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Field
{
  const char* key;
  std::function<void(ExperimentConfig&, std::string_view, std::string_view)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

template <typename Member>
Field real(const char* key, Member member)
{
  return {key,
          [member](ExperimentConfig& c, std::string_view k, std::string_view v) { c.*member = parse_double(k, v); },
          [member](const ExperimentConfig& c) { return fmt(c.*member); }};
}

template <typename Member>
Field integer(const char* key, Member member)
{
  return {key,
          [member](ExperimentConfig& c, std::string_view k, std::string_view v) {
            c.*member = static_cast<int>(parse_integer(k, v));
          },
          [member](const ExperimentConfig& c) { return std::to_string(c.*member); }};
}

Field decibel_milliwatt(const char* key, double ExperimentConfig::*member)
{
  return {key,
          [member](ExperimentConfig& c, std::string_view k, std::string_view v) {
            c.*member = dbm_to_watts(parse_double(k, v));
          },
          [member](const ExperimentConfig& c) { return fmt(watts_to_dbm(c.*member)); }};
}

template <typename Member>
Field pso_real(const char* key, Member member)
{
  return {key,
          [member](ExperimentConfig& c, std::string_view k, std::string_view v) { c.pso.*member = parse_double(k, v); },
          [member](const ExperimentConfig& c) { return fmt(c.pso.*member); }};
}

template <typename Member>
Field pso_integer(const char* key, Member member)
{
  return {key,
          [member](ExperimentConfig& c, std::string_view k, std::string_view v) {
            c.pso.*member = static_cast<int>(parse_integer(k, v));
          },
          [member](const ExperimentConfig& c) { return std::to_string(c.pso.*member); }};
}

template <typename Member>
Field grid_real(const char* key, Member member)
{
  return {key,
          [member](ExperimentConfig& c, std::string_view k, std::string_view v) {
            c.pattern.*member = parse_double(k, v);
          },
          [member](const ExperimentConfig& c) { return fmt(c.pattern.*member); }};
}

template <typename Member>
Field grid_count(const char* key, Member member)
{
  return {key,
          [member](ExperimentConfig& c, std::string_view k, std::string_view v) {
            const auto n = parse_integer(k, v);
            if (n < 1)
              throw ConfigError("key '" + std::string(k) + "' must be >= 1");
            c.pattern.*member = static_cast<std::size_t>(n);
          },
          [member](const ExperimentConfig& c) { return std::to_string(c.pattern.*member); }};
}

template <typename Member>
Field coordinate(const char* key, Vec3 ExperimentConfig::*point, Member member)
{
  return {key,
          [point, member](ExperimentConfig& c, std::string_view k, std::string_view v) {
            (c.*point).*member = parse_double(k, v);
          },
          [point, member](const ExperimentConfig& c) { return fmt((c.*point).*member); }};
}

const std::vector<Field>& fields()
{
  using C = ExperimentConfig;
  using P = mwmp::PsoParams;
  static const std::vector<Field> table = {
      real("carrier_frequency_hz", &C::carrier_frequency),
      real("effective_index", &C::effective_index),
      real("height_m", &C::height),
      real("waveguide_length_m", &C::waveguide_length),
      integer("num_waveguides", &C::num_waveguides),
      integer("pas_per_waveguide", &C::pas_per_waveguide),
      real("waveguide_separation_m", &C::waveguide_separation),
      real("pa_spacing_wavelengths", &C::pa_spacing_wavelengths),
      real("min_spacing_wavelengths", &C::min_spacing_wavelengths),
      decibel_milliwatt("max_power_dbm", &C::max_power),
      decibel_milliwatt("bob_noise_dbm", &C::bob_noise),
      decibel_milliwatt("willie_noise_dbm", &C::willie_noise),
      {"noise_uncertainty_db",
       [](C& c, std::string_view k, std::string_view v) { c.noise_bound = db_to_linear(parse_double(k, v)); },
       [](const C& c) { return fmt(10.0 * std::log10(c.noise_bound)); }},
      real("rho", &C::rho),
      real("uncertainty_radius_m", &C::uncertainty_radius),
      integer("sample_rings", &C::sample_rings),
      real("power_step_w", &C::power_step),
      pso_integer("pso_bs_population", &P::bs_population),
      pso_integer("pso_ps_population", &P::ps_population),
      pso_real("pso_bs_inertia", &P::bs_inertia),
      pso_real("pso_ps_inertia", &P::ps_inertia),
      pso_real("pso_bs_cognitive", &P::bs_cognitive),
      pso_real("pso_bs_social", &P::bs_social),
      pso_real("pso_ps_cognitive", &P::ps_cognitive),
      pso_real("pso_ps_social", &P::ps_social),
      pso_integer("pso_iterations", &P::iterations),
      pso_real("pso_max_velocity", &P::max_velocity),
      integer("monte_carlo_trials", &C::monte_carlo_trials),
      {"seed", [](C& c, std::string_view k, std::string_view v) { c.seed = parse_unsigned(k, v); },
       [](const C& c) { return std::to_string(c.seed); }},
      integer("workers", &C::workers),
      real("region_x_min", &C::region_x_min),
      real("region_x_max", &C::region_x_max),
      real("region_y_min", &C::region_y_min),
      real("region_y_max", &C::region_y_max),
      real("min_user_separation_m", &C::min_user_separation),
      coordinate("bob_x", &C::bob, &Vec3::x),
      coordinate("bob_y", &C::bob, &Vec3::y),
      coordinate("willie_x", &C::willie, &Vec3::x),
      coordinate("willie_y", &C::willie, &Vec3::y),
      integer("convergence_runs", &C::convergence_runs),
      grid_real("pattern_x_min", &GridSpec::x_min),
      grid_real("pattern_x_max", &GridSpec::x_max),
      grid_real("pattern_y_min", &GridSpec::y_min),
      grid_real("pattern_y_max", &GridSpec::y_max),
      grid_count("pattern_nx", &GridSpec::nx),
      grid_count("pattern_ny", &GridSpec::ny),
  };
  return table;
}

std::string_view trim(std::string_view s)
{
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

} // namespace

PhysConstants ExperimentConfig::constants() const
{
  return derive_constants(carrier_frequency, effective_index);
}

PassGeometry ExperimentConfig::geometry() const
{
  const double lambda = constants().wavelength;
  return PassGeometry::uniform(num_waveguides, pas_per_waveguide, height, waveguide_length, waveguide_separation,
                               pa_spacing_wavelengths * lambda, min_spacing_wavelengths * lambda);
}

Scenario ExperimentConfig::scenario(const Vec3& bob_pos, const Vec3& willie_centre) const
{
  Scenario sc;
  sc.pc = constants();
  sc.geometry = geometry();
  sc.bob = Vec3{bob_pos.x, bob_pos.y, 0.0};
  sc.willie = WillieUncertainty{Vec3{willie_centre.x, willie_centre.y, 0.0}, uncertainty_radius};
  sc.willie_noise = NoiseUncertainty{willie_noise, noise_bound};
  sc.bob_noise = bob_noise;
  sc.max_power = max_power;
  sc.covertness = CovertnessSpec{rho};
  sc.sample_rings = sample_rings;
  return sc;
}

void ExperimentConfig::validate() const
{
  try {
    (void)geometry();
    NoiseUncertainty{willie_noise, noise_bound}.validate();
    pso.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  if (!(rho >= 0.0 && rho <= 1.0))
    throw ConfigError("rho must lie in [0, 1]");
  if (!(uncertainty_radius >= 0.0))
    throw ConfigError("uncertainty_radius_m must be non-negative");
  if (sample_rings < 1)
    throw ConfigError("sample_rings must be >= 1");
  if (!(power_step > 0.0))
    throw ConfigError("power_step_w must be positive");
  if (monte_carlo_trials < 1)
    throw ConfigError("monte_carlo_trials must be >= 1");
  if (convergence_runs < 1)
    throw ConfigError("convergence_runs must be >= 1");
  if (!(region_x_max > region_x_min) || !(region_y_max > region_y_min))
    throw ConfigError("sampling region bounds are inverted");
  if (!(min_user_separation >= 0.0))
    throw ConfigError("min_user_separation_m must be non-negative");
  if (!(bob_noise > 0.0) || !(max_power > 0.0))
    throw ConfigError("bob noise and power budget must be positive");
}

void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value)
{
  for (const auto& f : fields()) {
    if (key == f.key) {
      f.set(cfg, key, value);
      return;
    }
  }
  std::string valid;
  for (const auto& f : fields())
    valid += (valid.empty() ? "" : ", ") + std::string(f.key);
  throw ConfigError("unknown key '" + std::string(key) + "'; valid keys: " + valid);
}

ExperimentConfig parse_config(std::string_view text)
{
  ExperimentConfig cfg;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    try {
      apply_setting(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string describe_config(const ExperimentConfig& cfg)
{
  std::string out;
  for (const auto& f : fields())
    out += std::string(f.key) + " = " + f.get(cfg) + "\n";
  return out;
}

} // namespace pinch
