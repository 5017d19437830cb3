#include "pinch/errors.hpp"
#include "pinch/experiment.hpp"
#include "pinch/swsp.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace pinch;

namespace {

// Largest received power over the disk from an antenna at (x, 0, h).
bool brute_covert(double x, double P, const Scenario& sc)
{
  const double dx0 = x - sc.willie.centre.x;
  const double dy0 = -sc.willie.centre.y;
  const double dxy = std::max(std::hypot(dx0, dy0) - sc.willie.radius, 0.0);
  const double d2 = dxy * dxy + sc.geometry.height * sc.geometry.height;
  return P * sc.pc.eta / d2 <= sc.gain_budget() * (1 + 1e-12);
}

} // namespace

TEST_CASE("boundary distance at full power is about 345 m")
{
  const auto sc = testing::swsp_scenario();
  const auto zone = swsp::forbidden_zone(1.0, sc);
  CHECK(zone.boundary_distance == doctest::Approx(345.0).epsilon(0.01));
  REQUIRE_FALSE(zone.empty());
  CHECK(zone.interval->first < 0.0);
  CHECK(zone.interval->second > 25.0);
  CHECK_FALSE(swsp::optimal_position(1.0, sc).has_value());
}

TEST_CASE("zero power has no forbidden zone")
{
  const auto sc = testing::swsp_scenario();
  CHECK(swsp::forbidden_zone(0.0, sc).empty());
  CHECK_THROWS_AS(swsp::forbidden_zone(-1.0, sc), InvalidArgument);
  auto strict = sc;
  strict.covertness.rho = 0.0;
  CHECK_THROWS_AS(swsp::forbidden_zone(1e-3, strict), InfeasibleCovertness);
}

TEST_CASE("forbidden zone agrees with a brute-force disk check")
{
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ux(0.0, 25.0), uy(-7.5, 7.5), up(1e-5, 1e-2);
  for (int trial = 0; trial < 200; ++trial) {
    const auto sc = testing::swsp_scenario({ux(rng), uy(rng), 0.0}, {ux(rng), uy(rng), 0.0});
    const double P = up(rng);
    const auto zone = swsp::forbidden_zone(P, sc);
    for (int i = 0; i <= 500; ++i) {
      const double x = -5.0 + 35.0 * i / 500.0;
      if (zone.interval && (std::abs(x - zone.interval->first) < 1e-9 || std::abs(x - zone.interval->second) < 1e-9))
        continue;
      CHECK(zone.contains_strictly(x) == !brute_covert(x, P, sc));
    }
  }
}

TEST_CASE("closed-form position is the nearest feasible point to Bob")
{
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ux(0.0, 25.0), uy(-7.5, 7.5), up(1e-5, 5e-3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto sc = testing::swsp_scenario({ux(rng), uy(rng), 0.0}, {ux(rng), uy(rng), 0.0});
    const double P = up(rng);
    const auto x = swsp::optimal_position(P, sc);
    double best = -1.0;
    double best_gap = 1e300;
    for (int i = 0; i <= 25000; ++i) {
      const double xi = 25.0 * i / 25000.0;
      if (brute_covert(xi, P, sc) && std::abs(xi - sc.bob.x) < best_gap) {
        best_gap = std::abs(xi - sc.bob.x);
        best = xi;
      }
    }
    if (best < 0.0) {
      CHECK_FALSE(x.has_value());
    } else {
      REQUIRE(x.has_value());
      CHECK(std::abs(*x - sc.bob.x) <= best_gap + 1e-3);
      CHECK(brute_covert(*x, P, sc));
    }
  }
}

TEST_CASE("Bob outside the zone keeps the antenna overhead")
{
  const auto sc = testing::swsp_scenario({20.0, 6.0, 0.0}, {2.0, -7.0, 0.0});
  CHECK(swsp::optimal_position(1e-5, sc).value() == doctest::Approx(20.0));
}

TEST_CASE("fixed scenario places the antenna near 22 m")
{
  const auto sc = testing::swsp_scenario();
  const auto sol = swsp::solve(sc, 1e-5);
  REQUIRE(sol.feasible);
  CHECK(sol.x == doctest::Approx(22.0).epsilon(1.0 / 22.0));
  CHECK(swsp_covert(sol.x, sol.power, sc));
  CHECK(sol.rate == doctest::Approx(swsp::rate_at(sol.x, sol.power, sc)));
  for (std::size_t i = 1; i < sol.trace.size(); ++i)
    CHECK(sol.trace[i] >= sol.trace[i - 1]);
  CHECK_THROWS_AS(swsp::solve(sc, 0.0), InvalidArgument);
}

TEST_CASE("zero covertness budget yields no transmission")
{
  auto sc = testing::swsp_scenario();
  sc.covertness.rho = 0.0;
  const auto sol = swsp::solve(sc, 1e-3);
  CHECK_FALSE(sol.feasible);
  CHECK(sol.rate == 0.0);
}

TEST_CASE("rate is non-increasing in antenna distance from Bob")
{
  const auto sc = testing::swsp_scenario();
  double prev = 1e300;
  for (int i = 0; i <= 50; ++i) {
    const double r = swsp::rate_at(20.0 + 0.1 * i, 1e-3, sc);
    CHECK(r <= prev);
    prev = r;
  }
}
