#include "pinch/channel.hpp"
#include "pinch/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace pinch;

namespace {

const PhysConstants pc = derive_constants(28e9, 1.4);

} // namespace

TEST_CASE("propagation constants at 28 GHz")
{
  const double lambda = 2.998e8 / 28e9;
  CHECK(pc.wavelength == doctest::Approx(lambda).epsilon(1e-14));
  CHECK(pc.guided_wavelength == doctest::Approx(lambda / 1.4).epsilon(1e-14));
  CHECK(pc.k_free == doctest::Approx(2 * std::numbers::pi / lambda).epsilon(1e-14));
  CHECK(pc.k_guided == doctest::Approx(1.4 * 2 * std::numbers::pi / lambda).epsilon(1e-14));
  // eta in dB near -61.4
  CHECK(10 * std::log10(pc.eta) == doctest::Approx(-61.4).epsilon(0.002));
  CHECK_THROWS_AS(derive_constants(0.0, 1.4), InvalidArgument);
  CHECK_THROWS_AS(derive_constants(28e9, 0.5), InvalidArgument);
}

TEST_CASE("LoS coefficient magnitude and phase")
{
  const Vec3 a{1.0, 2.0, 3.0};
  const Vec3 r{4.0, -2.0, 0.0};
  const double d = std::sqrt(9.0 + 16.0 + 9.0);
  const auto h = los_coeff(a, r, pc);
  CHECK(std::abs(h) == doctest::Approx(std::sqrt(pc.eta) / d).epsilon(1e-13));
  const auto expected = std::polar(std::sqrt(pc.eta) / d, -pc.k_free * d);
  CHECK(std::abs(h - expected) < 1e-15);
  CHECK_THROWS_AS(los_coeff(a, a, pc), DegenerateGeometry);
}

TEST_CASE("in-waveguide phase is periodic in the guided wavelength")
{
  for (double x : {0.0, 0.3, 7.7, 24.9}) {
    const auto a = inwg_phase(x, pc);
    const auto b = inwg_phase(x + pc.guided_wavelength, pc);
    CHECK(std::abs(a - b) < 1e-9);
    CHECK(std::abs(a) == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(inwg_vector(std::vector<double>{}, pc), InvalidArgument);
  const std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
  CHECK(norm(inwg_vector(xs, pc)) == doctest::Approx(1.0));
}

TEST_CASE("effective channel matches a per-antenna sum")
{
  const auto geom = PassGeometry::uniform(4, 3, 3.0, 25.0, 3.0, pc.wavelength / 2, pc.wavelength / 2);
  const PinchLayout layout{{2.0, 7.5, 13.25, 20.0}};
  const Vec3 r{11.0, 4.0, 0.0};
  const auto eff = effective_channel(layout, r, geom, pc);
  REQUIRE(eff.size() == 4);
  const double ys[] = {-4.5, -1.5, 1.5, 4.5};
  for (std::size_t n = 0; n < 4; ++n) {
    cplx acc{0.0, 0.0};
    for (int m = 0; m < 3; ++m) {
      const double x = layout.x_init[n] + m * pc.wavelength / 2;
      const double d = std::sqrt((x - r.x) * (x - r.x) + (ys[n] - r.y) * (ys[n] - r.y) + 9.0);
      const auto h = std::sqrt(pc.eta) / d * std::exp(cplx{0.0, -pc.k_free * d});
      const auto g = std::exp(cplx{0.0, -pc.k_guided * x}) / std::sqrt(3.0);
      acc += std::conj(h) * g;
    }
    CHECK(std::abs(eff[n] - acc) < 1e-12 * std::abs(acc));
  }
}

TEST_CASE("single antenna SNR equals P eta / (d^2 sigma^2)")
{
  const auto geom = PassGeometry::single(3.0, 25.0);
  const PinchLayout layout{{22.0}};
  const Vec3 bob{20.0, 6.0, 0.0};
  const BeamVector beam{{cplx{1.0, 0.0}}, 0.01};
  const double d2 = 4.0 + 36.0 + 9.0;
  CHECK(snr_bob(layout, beam, bob, 1e-13, geom, pc) == doctest::Approx(0.01 * pc.eta / d2 / 1e-13).epsilon(1e-12));
  CHECK_THROWS_AS(snr_bob(layout, beam, bob, 0.0, geom, pc), InvalidArgument);
}

TEST_CASE("geometry validation")
{
  auto g = PassGeometry::uniform(4, 3, 3.0, 25.0, 3.0, 0.01, 0.01);
  CHECK(g.waveguide_y == std::vector<double>{-4.5, -1.5, 1.5, 4.5});
  CHECK(g.usable_length() == doctest::Approx(24.98));
  CHECK_THROWS_AS(PassGeometry::uniform(4, 3, 3.0, 25.0, 3.0, 0.005, 0.01), InvalidArgument);
  CHECK_THROWS_AS(PassGeometry::uniform(0, 1, 3.0, 25.0, 3.0, 0.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(PassGeometry::uniform(1, 1, -1.0, 25.0, 3.0, 0.0, 0.0), InvalidArgument);
  PinchLayout bad{{30.0, 0.0, 0.0, 0.0}};
  CHECK_THROWS_AS(bad.validate(g), InvalidArgument);
}

TEST_CASE("beamforming helpers")
{
  const CVec v{{3.0, 0.0}, {0.0, 4.0}};
  CHECK(norm(v) == doctest::Approx(5.0));
  CHECK(norm(normalized(v)) == doctest::Approx(1.0));
  CHECK_THROWS_AS(normalized(CVec{{0.0, 0.0}}), InvalidArgument);
  CHECK_THROWS_AS(make_beam(v, -1.0), InvalidArgument);
  const auto beam = make_beam(v, 4.0);
  CHECK(norm(beam.full()) == doctest::Approx(2.0));
  // apply does not conjugate the weights
  CHECK(std::abs(pinch::apply(CVec{{0.0, 1.0}}, CVec{{0.0, 1.0}}) - cplx{-1.0, 0.0}) < 1e-15);
}

TEST_CASE("beam pattern grid peaks at one when normalized")
{
  const auto geom = PassGeometry::single(3.0, 25.0);
  const BeamVector beam{{cplx{1.0, 0.0}}, 1.0};
  GridSpec spec{0.0, 25.0, -10.0, 10.0, 26, 21};
  const auto grid = beam_pattern_grid(PinchLayout{{10.0}}, beam, spec, geom, pc, true);
  REQUIRE(grid.values.size() == 26 * 21);
  double peak = 0.0;
  for (double v : grid.values) {
    CHECK(v >= 0.0);
    peak = std::max(peak, v);
  }
  CHECK(peak == doctest::Approx(1.0));
  CHECK(grid.at(10, 10) == doctest::Approx(1.0)); // directly below the antenna
  spec.nx = 0;
  CHECK_THROWS_AS(beam_pattern_grid(PinchLayout{{10.0}}, beam, spec, geom, pc, true), InvalidArgument);
}
