#include "pinch/detection.hpp"

#include "pinch/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pinch {

void NoiseUncertainty::validate() const
{
  if (!(nominal > 0.0))
    throw InvalidArgument("nominal noise power must be positive");
  if (!(bound > 1.0))
    throw InvalidArgument("noise uncertainty bound must exceed 1");
}

double noise_pdf(double v, const NoiseUncertainty& nu)
{
  nu.validate();
  if (!(v > 0.0))
    throw InvalidArgument("noise power argument must be positive");
  if (v < nu.lower() || v > nu.upper())
    return 0.0;
  return 1.0 / (2.0 * std::log(nu.bound) * v);
}

namespace {

// P{sigma^2 <= t} for the log-uniform law.
double noise_cdf(double t, const NoiseUncertainty& nu)
{
  if (t <= nu.lower())
    return 0.0;
  if (t >= nu.upper())
    return 1.0;
  return std::log(t / nu.lower()) / (2.0 * std::log(nu.bound));
}

} // namespace

double false_alarm_probability(double threshold, const NoiseUncertainty& nu)
{
  return 1.0 - noise_cdf(threshold, nu);
}

double miss_detection_probability(double threshold, double signal_power, const NoiseUncertainty& nu)
{
  const double slack = threshold - signal_power;
  if (slack <= 0.0)
    return 0.0;
  return noise_cdf(slack, nu);
}

double total_error_rate(double threshold, double signal_power, const NoiseUncertainty& nu)
{
  nu.validate();
  if (!(threshold > 0.0))
    throw InvalidArgument("detection threshold must be positive");
  if (!(signal_power >= 0.0))
    throw InvalidArgument("received signal power must be non-negative");
  return false_alarm_probability(threshold, nu) + miss_detection_probability(threshold, signal_power, nu);
}

DetectionOptimum optimal_detection(double signal_power, const NoiseUncertainty& nu)
{
  nu.validate();
  if (!(signal_power >= 0.0))
    throw InvalidArgument("received signal power must be non-negative");
  const double b = nu.bound;
  const double s2 = nu.nominal;
  DetectionOptimum opt;
  opt.threshold = s2 / b + signal_power;
  const double xi = std::log(b * b * s2 / (s2 + signal_power * b)) / (2.0 * std::log(b));
  opt.min_error = std::clamp(xi, 0.0, 1.0);
  return opt;
}

double covert_gain_budget(const CovertnessSpec& spec, const NoiseUncertainty& nu)
{
  nu.validate();
  if (!(spec.rho >= 0.0 && spec.rho <= 1.0))
    throw InvalidArgument("covertness parameter rho must lie in [0, 1]");
  return nu.nominal / nu.bound * (std::pow(nu.bound, 2.0 * spec.rho) - 1.0);
}

double willie_gain(const PinchLayout& layout, const BeamVector& beam, const Vec3& willie,
                   const PassGeometry& geom, const PhysConstants& pc)
{
  const auto eff = effective_channel(layout, willie, geom, pc);
  return beam.power * std::norm(pinch::apply(eff, beam.weights));
}

std::vector<Vec3> sample_region(const WillieUncertainty& wu, int rings)
{
  if (rings < 1)
    throw InvalidArgument("sample region needs at least one ring");
  if (!(wu.radius >= 0.0))
    throw InvalidArgument("uncertainty radius must be non-negative");

  const Vec3 c{wu.centre.x, wu.centre.y, 0.0};
  std::vector<Vec3> pts;
  pts.reserve(4 * static_cast<std::size_t>(rings) + 1);
  pts.push_back(c);
  for (int k = 1; k <= rings; ++k) {
    const double off = static_cast<double>(k) * wu.radius / static_cast<double>(rings);
    pts.push_back({c.x + off, c.y, 0.0});
    pts.push_back({c.x - off, c.y, 0.0});
    pts.push_back({c.x, c.y + off, 0.0});
    pts.push_back({c.x, c.y - off, 0.0});
  }
  return pts;
}

double worst_case_gain(const PinchLayout& layout, std::span<const cplx> unit_weights,
                       std::span<const Vec3> samples, const PassGeometry& geom, const PhysConstants& pc)
{
  if (samples.empty())
    throw InvalidArgument("worst-case gain needs at least one sample");
  double worst = 0.0;
  for (const auto& r : samples)
    worst = std::max(worst, std::norm(pinch::apply(effective_channel(layout, r, geom, pc), unit_weights)));
  return worst;
}

} // namespace pinch
