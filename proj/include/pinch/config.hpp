#pragma once

#include "pinch/channel.hpp"
#include "pinch/mwmp.hpp"
#include "pinch/scenario.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace pinch {

double dbm_to_watts(double dbm);
double db_to_linear(double db);

/// Experiment parameters. Powers are held in watts and the noise bound as a
/// linear ratio; the config file spells them in dBm / dB and parsing converts.
struct ExperimentConfig
{
  double carrier_frequency = 28e9;
  double effective_index = 1.4;
  double height = 3.0;
  double waveguide_length = 25.0;
  int num_waveguides = 4;
  int pas_per_waveguide = 3;
  double waveguide_separation = 3.0;
  double pa_spacing_wavelengths = 0.5;
  double min_spacing_wavelengths = 0.5;

  double max_power = 1.0;         // 30 dBm
  double bob_noise = 1e-13;       // -100 dBm
  double willie_noise = 1e-10;    // -70 dBm
  double noise_bound = 1.5848931924611136; // 2 dB
  double rho = 0.1;
  double uncertainty_radius = 0.5;
  int sample_rings = 1;

  double power_step = 1e-5; // SWSP power search step, W
  mwmp::PsoParams pso;

  int monte_carlo_trials = 200;
  std::uint64_t seed = 1;
  int workers = 0; // 0 picks the hardware concurrency

  double region_x_min = 0.0;
  double region_x_max = 25.0;
  double region_y_min = -7.5;
  double region_y_max = 7.5;
  double min_user_separation = 1.0;

  Vec3 bob{20.0, 6.0, 0.0};
  Vec3 willie{7.0, -9.0, 0.0};

  int convergence_runs = 20;
  GridSpec pattern;

  PhysConstants constants() const;
  PassGeometry geometry() const;
  Scenario scenario(const Vec3& bob, const Vec3& willie_centre) const;
  Scenario fixed_scenario() const { return scenario(bob, willie); }

  void validate() const;
};

/// Applies one `key = value` setting; throws ConfigError for unknown keys.
void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value);

/// Flat `key = value` lines; `#` starts a comment.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Every accepted key with its current value, in file syntax.
std::string describe_config(const ExperimentConfig& cfg);

} // namespace pinch
