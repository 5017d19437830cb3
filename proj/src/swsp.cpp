#include "pinch/swsp.hpp"

#include "pinch/errors.hpp"

#include <algorithm>
#include <cmath>

namespace pinch::swsp {

ForbiddenZone forbidden_zone(double power, const Scenario& sc)
{
  if (!(power >= 0.0))
    throw InvalidArgument("transmit power must be non-negative");

  ForbiddenZone zone;
  if (power == 0.0)
    return zone;

  const double budget = sc.gain_budget();
  if (!(budget > 0.0))
    throw InfeasibleCovertness("rho = 0 admits no positive transmit power");

  const double h = sc.geometry.height;
  // Covertness holds at distance d iff P * eta / d^2 <= Gamma_w.
  zone.boundary_distance = std::sqrt(power * sc.pc.eta / budget);
  if (zone.boundary_distance <= h)
    return zone;

  zone.total_distance =
      std::sqrt(std::max(zone.boundary_distance * zone.boundary_distance - h * h, 0.0)) + sc.willie.radius;
  const double abs_y = std::abs(sc.willie.centre.y);
  if (abs_y >= zone.total_distance)
    return zone;

  zone.angle = std::acos(abs_y / zone.total_distance);
  const double half = std::sqrt(zone.total_distance * zone.total_distance - abs_y * abs_y);
  zone.interval = std::pair{sc.willie.centre.x - half, sc.willie.centre.x + half};
  return zone;
}

std::optional<double> optimal_position(double power, const Scenario& sc)
{
  const double length = sc.geometry.length;
  const double xb = sc.bob.x;
  const auto zone = forbidden_zone(power, sc);

  if (!zone.contains_strictly(xb) && xb >= 0.0 && xb <= length)
    return xb;

  // Feasible set is [0, L] minus the open zone: at most two closed pieces.
  std::vector<std::pair<double, double>> pieces;
  if (zone.empty()) {
    pieces.emplace_back(0.0, length);
  } else {
    const auto [lo, hi] = *zone.interval;
    if (lo >= 0.0)
      pieces.emplace_back(0.0, std::min(lo, length));
    if (hi <= length)
      pieces.emplace_back(std::max(hi, 0.0), length);
  }
  if (pieces.empty())
    return std::nullopt;

  std::optional<double> best;
  for (const auto& [lo, hi] : pieces) {
    const double cand = std::clamp(xb, lo, hi);
    if (!best) {
      best = cand;
      continue;
    }
    const double d_new = std::abs(cand - xb);
    const double d_old = std::abs(*best - xb);
    if (d_new < d_old || (d_new == d_old && cand < *best))
      best = cand;
  }
  return best;
}

double rate_at(double x, double power, const Scenario& sc)
{
  const PassGeometry geom = PassGeometry::single(sc.geometry.height, sc.geometry.length);
  const PinchLayout layout{{x}};
  const BeamVector beam{{cplx{1.0, 0.0}}, power};
  return rate_from_snr(snr_bob(layout, beam, sc.bob, sc.bob_noise, geom, sc.pc));
}

Solution solve(const Scenario& sc, double power_step)
{
  if (!(power_step > 0.0))
    throw InvalidArgument("power search step must be positive");

  Solution best;
  if (!(sc.gain_budget() > 0.0))
    return best;

  // Integer step count avoids drift from repeated floating-point addition.
  const auto steps = static_cast<long long>(std::floor(sc.max_power / power_step * (1.0 + 1e-12)));
  double best_rate = 0.0;
  for (long long t = 1; t <= steps; ++t) {
    const double power = static_cast<double>(t) * power_step;
    const auto x = optimal_position(power, sc);
    if (!x)
      break;
    const double r = rate_at(*x, power, sc);
    if (r >= best_rate) {
      best_rate = r;
      best.power = power;
      best.x = *x;
      best.rate = r;
      best.feasible = true;
    }
    best.trace.push_back(best_rate);
  }
  return best;
}

} // namespace pinch::swsp
