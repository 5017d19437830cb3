#pragma once

#include "pinch/channel.hpp"

#include <span>
#include <vector>

namespace pinch {

/// Willie's noise power is log-uniform on [nominal / bound, nominal * bound].
struct NoiseUncertainty
{
  double nominal = 1e-10; // W
  double bound = 1.5848931924611136; // linear, > 1

  double lower() const { return nominal / bound; }
  double upper() const { return nominal * bound; }
  void validate() const;
};

/// Alice knows Willie only up to a disk of the given radius around the centre.
struct WillieUncertainty
{
  Vec3 centre;
  double radius = 0.0;
};

struct CovertnessSpec
{
  double rho = 0.1; // Willie's total error rate must stay >= 1 - rho
};

double noise_pdf(double v, const NoiseUncertainty& nu);

double false_alarm_probability(double threshold, const NoiseUncertainty& nu);
double miss_detection_probability(double threshold, double signal_power, const NoiseUncertainty& nu);

/// P_F + P_M for a radiometer threshold and a received covert-signal power.
double total_error_rate(double threshold, double signal_power, const NoiseUncertainty& nu);

struct DetectionOptimum
{
  double threshold = 0.0;
  double min_error = 1.0;
};

/// Willie's best threshold and the error rate it achieves. The error rate is
/// clamped at zero once the signal is strong enough to separate the hypotheses.
DetectionOptimum optimal_detection(double signal_power, const NoiseUncertainty& nu);

/// Largest received power at Willie that keeps his minimal error >= 1 - rho.
double covert_gain_budget(const CovertnessSpec& spec, const NoiseUncertainty& nu);

double willie_gain(const PinchLayout& layout, const BeamVector& beam, const Vec3& willie,
                   const PassGeometry& geom, const PhysConstants& pc);

/// Axis-aligned cross of 4K + 1 points in the ground plane, centre included.
std::vector<Vec3> sample_region(const WillieUncertainty& wu, int rings);

/// Max of the unit-power gain over the sample set.
double worst_case_gain(const PinchLayout& layout, std::span<const cplx> unit_weights,
                       std::span<const Vec3> samples, const PassGeometry& geom, const PhysConstants& pc);

} // namespace pinch
