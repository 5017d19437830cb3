#include "pinch/detection.hpp"
#include "pinch/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace pinch;

namespace {

const NoiseUncertainty nu{1e-10, std::pow(10.0, 0.2)};

// Five-branch piecewise form of P_F + P_M written out directly.
double branches(double G, double S, double s2, double b)
{
  const double lo = s2 / b;
  const double hi = s2 * b;
  const double L = 2.0 * std::log(b);
  if (G < lo)
    return 1.0;
  if (G < S + lo && G < hi)
    return std::log(s2 * b / G) / L;
  if (G >= S + lo && G <= hi)
    return 1.0 + std::log((G - S) / G) / L;
  if (G > hi && G <= S + hi)
    return std::log(b * (G - S) / s2) / L;
  if (G > S + hi)
    return 1.0;
  return std::nan("");
}

} // namespace

TEST_CASE("noise pdf integrates to one")
{
  const int n = 200000;
  const double a = nu.lower();
  const double b = nu.upper();
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = a + (b - a) * (i + 0.5) / n;
    sum += noise_pdf(v, nu) * (b - a) / n;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(noise_pdf(a * 0.99, nu) == 0.0);
  CHECK(noise_pdf(b * 1.01, nu) == 0.0);
}

TEST_CASE("error rate edge cases")
{
  CHECK(total_error_rate(nu.lower() * 0.5, 1e-11, nu) == doctest::Approx(1.0));
  CHECK(total_error_rate(1e-10, 0.0, nu) == doctest::Approx(1.0));
  // huge signal and threshold between the two supports: perfect detection
  CHECK(total_error_rate(nu.upper() * 1.01, 1.0, nu) == doctest::Approx(0.0));
  CHECK(optimal_detection(0.0, nu).min_error == doctest::Approx(1.0));
  CHECK(optimal_detection(1.0, nu).min_error == 0.0);
  CHECK_THROWS_AS(total_error_rate(-1.0, 0.0, nu), InvalidArgument);
  CHECK_THROWS_AS(optimal_detection(-1.0, nu), InvalidArgument);
  CHECK_THROWS_AS(optimal_detection(0.0, NoiseUncertainty{1e-10, 1.0}), InvalidArgument);
}

TEST_CASE("error rate agrees with the branch form")
{
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double S = (nu.upper() - nu.lower()) * (0.001 + 0.998 * u(rng));
    const double G = nu.lower() * 0.9 + (S + nu.upper() * 1.1 - nu.lower() * 0.9) * u(rng);
    CHECK(std::abs(total_error_rate(G, S, nu) - branches(G, S, nu.nominal, nu.bound)) < 1e-12);
  }
}

TEST_CASE("covert budget round trip")
{
  const double budget = covert_gain_budget(CovertnessSpec{0.1}, nu);
  CHECK(budget == doctest::Approx(6.09e-12).epsilon(0.01));
  CHECK(optimal_detection(budget, nu).min_error == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(covert_gain_budget(CovertnessSpec{0.0}, nu) == 0.0);
  CHECK_THROWS_AS(covert_gain_budget(CovertnessSpec{1.5}, nu), InvalidArgument);
}

TEST_CASE("minimal error is non-increasing in the signal power")
{
  double prev = 1.0;
  for (int i = 0; i <= 200; ++i) {
    const double S = 1e-14 * std::pow(10.0, i * 0.03);
    const double xi = optimal_detection(S, nu).min_error;
    CHECK(xi <= prev + 1e-15);
    CHECK(xi >= 0.0);
    prev = xi;
  }
}

TEST_CASE("sample region is a cross of 4K+1 ground points")
{
  const WillieUncertainty wu{{7.0, -9.0, 0.0}, 0.5};
  const auto pts = sample_region(wu, 2);
  REQUIRE(pts.size() == 9);
  CHECK(pts[0].x == 7.0);
  CHECK(pts[0].y == -9.0);
  for (const auto& p : pts) {
    CHECK(p.z == 0.0);
    CHECK(std::hypot(p.x - 7.0, p.y + 9.0) <= 0.5 + 1e-12);
  }
}
