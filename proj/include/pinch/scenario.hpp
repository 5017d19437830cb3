#pragma once

#include "pinch/channel.hpp"
#include "pinch/detection.hpp"

#include <cmath>
#include <vector>

namespace pinch {

/// Everything a solver needs about one Alice/Bob/Willie instance.
/// Powers are linear watts. The SWSP solver uses only height and length of
/// the geometry and always places its antenna on y = 0.
struct Scenario
{
  PhysConstants pc;
  PassGeometry geometry;
  Vec3 bob;
  WillieUncertainty willie;
  NoiseUncertainty willie_noise;
  double bob_noise = 1e-13;
  double max_power = 1.0;
  CovertnessSpec covertness;
  int sample_rings = 1;

  double gain_budget() const { return covert_gain_budget(covertness, willie_noise); }
  std::vector<Vec3> willie_samples() const { return sample_region(willie, sample_rings); }
};

inline double rate_from_snr(double snr)
{
  return std::log2(1.0 + snr);
}

} // namespace pinch
