#include "pinch/benchmarks.hpp"
#include "pinch/errors.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace pinch;

namespace {

const PhysConstants pc = derive_constants(28e9, 1.4);

CVec random_vec(std::mt19937_64& rng, std::size_t n)
{
  std::normal_distribution<double> g;
  CVec v(n);
  for (auto& c : v)
    c = {g(rng), g(rng)};
  return v;
}

} // namespace

TEST_CASE("ULA channel is a set of per-element LoS coefficients")
{
  const Vec3 r{20.0, 6.0, 0.0};
  const auto one = bench::ula_channel(r, 1, 3.0, pc);
  CHECK(std::abs(one[0] - los_coeff({0.0, 0.0, 3.0}, r, pc)) < 1e-18);
  const auto h = bench::ula_channel(r, 4, 3.0, pc);
  for (int n = 1; n <= 4; ++n) {
    const Vec3 e{(n - 2.5) * pc.wavelength / 2, 0.0, 3.0};
    CHECK(std::abs(h[n - 1] - los_coeff(e, r, pc)) < 1e-18);
    CHECK(std::abs(h[n - 1]) == doctest::Approx(std::sqrt(pc.eta) / distance(e, r)));
  }
  CHECK_THROWS_AS(bench::ula_channel(r, 0, 3.0, pc), InvalidArgument);
}

TEST_CASE("MRT beats random unit vectors")
{
  std::mt19937_64 rng(1);
  const auto h = random_vec(rng, 4);
  const auto w = bench::mrt_weights(h);
  const double gain = std::abs(pinch::apply(h, w));
  CHECK(gain == doctest::Approx(norm(h)));
  for (int i = 0; i < 10000; ++i)
    CHECK(std::abs(pinch::apply(h, normalized(random_vec(rng, 4)))) <= gain + 1e-12);
  CHECK_THROWS_AS(bench::mrt_weights(CVec(3)), DegenerateChannel);
}

TEST_CASE("ZF nulls Willie and matches Gram-Schmidt for N = 2")
{
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    const auto hb = random_vec(rng, 2);
    const auto hw = random_vec(rng, 2);
    const auto w = bench::zf_weights(hb, hw);
    CHECK(std::abs(pinch::apply(hw, w)) <= 1e-10 * norm(hw));
    CHECK(norm(w) == doctest::Approx(1.0));
    // In two dimensions the null space of hw is spanned by (hw1, -hw0);
    // Bob's best gain in that space is |hb . u| for the unit u.
    CVec u{hw[1], -hw[0]};
    u = normalized(u);
    CHECK(std::abs(pinch::apply(hb, w)) == doctest::Approx(std::abs(pinch::apply(hb, u))).epsilon(1e-10));
  }
}

TEST_CASE("ZF reduces to MRT for orthogonal channels")
{
  const CVec hb{{1.0, 0.0}, {0.0, 0.0}};
  const CVec hw{{0.0, 0.0}, {0.0, 2.0}};
  const auto zf = bench::zf_weights(hb, hw);
  const auto mrt = bench::mrt_weights(hb);
  CHECK(std::abs(zf[0] - mrt[0]) < 1e-12);
  CHECK(std::abs(zf[1] - mrt[1]) < 1e-12);
}

TEST_CASE("ZF error paths")
{
  const CVec h{{1.0, 0.0}, {0.0, 1.0}};
  const CVec par{{2.0, 0.0}, {0.0, 2.0}};
  CHECK_THROWS_AS(bench::zf_weights(h, par), NullSpaceEmpty);
  CHECK_THROWS_AS(bench::zf_weights(CVec{{1.0, 0.0}}, CVec{{1.0, 0.0}}), InvalidArgument);
  CHECK_THROWS_AS(bench::zf_weights(h, CVec(2)), DegenerateChannel);
}

TEST_CASE("heuristic layout centres the group on Bob")
{
  auto geom = PassGeometry::uniform(4, 3, 3.0, 25.0, 3.0, pc.wavelength / 2, pc.wavelength / 2);
  auto layout = bench::heuristic_pass_layout({20.0, 0.0, 0.0}, geom);
  for (double x : layout.x_init)
    CHECK(x == doctest::Approx(20.0 - pc.wavelength / 2));
  layout = bench::heuristic_pass_layout({-5.0, 0.0, 0.0}, geom);
  CHECK(layout.x_init[0] == 0.0);
  layout = bench::heuristic_pass_layout({30.0, 0.0, 0.0}, geom);
  CHECK(layout.x_init[0] == doctest::Approx(geom.usable_length()));
  geom = PassGeometry::uniform(2, 1, 3.0, 25.0, 3.0, 0.0, 0.0);
  layout = bench::heuristic_pass_layout({13.0, 0.0, 0.0}, geom);
  CHECK(layout.x_init[1] == 13.0);
}

TEST_CASE("benchmarks respect the sampled covertness budget")
{
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> ux(0.0, 25.0), uy(-7.5, 7.5);
  for (int i = 0; i < 30; ++i) {
    const auto sc = testing::default_scenario({ux(rng), uy(rng), 0.0}, {ux(rng), uy(rng), 0.0});
    for (auto kind : {bench::Kind::MimoZf, bench::Kind::MimoMrt, bench::Kind::PassZf, bench::Kind::PassMrt}) {
      const auto out = bench::evaluate(kind, sc);
      CHECK(out.power <= sc.max_power);
      CHECK(out.power * out.worst_gain <= sc.gain_budget() * (1 + 1e-9));
      CHECK(out.rate >= 0.0);
    }
  }
}

TEST_CASE("MIMO ZF with a point Willie is budget limited")
{
  auto sc = testing::default_scenario();
  sc.willie.radius = 0.0;
  const auto out = bench::evaluate(bench::Kind::MimoZf, sc);
  CHECK(out.power == doctest::Approx(sc.max_power));
}

TEST_CASE("scheme names")
{
  CHECK(bench::name(bench::Kind::MimoZf) == "mimo_zf");
  CHECK(bench::name(bench::Kind::PassMrt) == "pass_mrt");
}
