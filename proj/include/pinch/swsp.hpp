#pragma once

#include "pinch/scenario.hpp"

#include <optional>
#include <vector>

namespace pinch::swsp {

/// Interval of antenna x-positions from which some point of Willie's
/// uncertainty disk would see a covertness violation.
struct ForbiddenZone
{
  std::optional<std::pair<double, double>> interval;
  double boundary_distance = 0.0; // d_bou: minimum PA-to-Willie distance, m
  double total_distance = 0.0;    // projected boundary distance plus the uncertainty radius, m
  double angle = 0.0;             // rad; half-width = total_distance * sin(angle)

  bool empty() const { return !interval.has_value(); }
  bool contains(double x) const { return interval && x >= interval->first && x <= interval->second; }
  bool contains_strictly(double x) const { return interval && x > interval->first && x < interval->second; }
};

ForbiddenZone forbidden_zone(double power, const Scenario& sc);

/// Closest feasible x to Bob on [0, L] outside the zone interior; nullopt
/// when the zone swallows the whole waveguide.
std::optional<double> optimal_position(double power, const Scenario& sc);

/// Covert rate of a single antenna at x transmitting with the given power.
double rate_at(double x, double power, const Scenario& sc);

struct Solution
{
  double power = 0.0;
  double x = 0.0;
  double rate = 0.0;
  bool feasible = false;
  std::vector<double> trace; // best rate so far after each power step
};

/// Linear power search with step `power_step`, closed-form placement per step,
/// stopping at the first power for which no feasible position exists.
Solution solve(const Scenario& sc, double power_step);

} // namespace pinch::swsp
