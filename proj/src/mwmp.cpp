#include "pinch/mwmp.hpp"

#include "pinch/errors.hpp"

#include <algorithm>
#include <cmath>

namespace pinch::mwmp {

namespace {

double uniform01(Rng& rng)
{
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

CVec random_beam(std::size_t n, Rng& rng)
{
  std::normal_distribution<double> gauss(0.0, 1.0);
  CVec v(n);
  double s = 0.0;
  while (!(s > 0.0)) {
    s = 0.0;
    for (auto& c : v) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      c = {re, im};
      s += re * re + im * im;
    }
  }
  return normalize_bs(v);
}

double clamp_velocity(double v, double vmax)
{
  return std::clamp(v, -vmax, vmax);
}

cplx clamp_velocity(cplx v, double vmax)
{
  return {std::clamp(v.real(), -vmax, vmax), std::clamp(v.imag(), -vmax, vmax)};
}

// v <- w v + c1 th1 (local - p) + c2 th2 (global - p), clamp, p <- p + v.
template <typename T>
void move_particle(Particle<T>& p, const std::vector<T>& global_best, double inertia, double cognitive,
                   double social, double vmax, Rng& rng)
{
  for (std::size_t d = 0; d < p.position.size(); ++d) {
    const double th1 = uniform01(rng);
    const double th2 = uniform01(rng);
    const T v = inertia * p.velocity[d] + cognitive * th1 * (p.best_position[d] - p.position[d]) +
                social * th2 * (global_best[d] - p.position[d]);
    p.velocity[d] = clamp_velocity(v, vmax);
    p.position[d] += p.velocity[d];
  }
}

template <typename T>
void refresh_global(Swarm<T>& swarm)
{
  for (const auto& p : swarm.particles) {
    if (p.best_score > swarm.global_score) {
      swarm.global_score = p.best_score;
      swarm.global_best = p.best_position;
    }
  }
}

void offer(Incumbent& inc, std::span<const double> ps, std::span<const cplx> bs, double score)
{
  if (score > inc.score) {
    inc.score = score;
    inc.ps.assign(ps.begin(), ps.end());
    inc.bs.assign(bs.begin(), bs.end());
  }
}

} // namespace

void PsoParams::validate() const
{
  if (bs_population < 1 || ps_population < 1 || iterations < 1)
    throw InvalidArgument("swarm populations and iteration count must be >= 1");
  if (!(max_velocity > 0.0))
    throw InvalidArgument("maximum particle velocity must be positive");
  for (double v : {bs_inertia, ps_inertia, bs_cognitive, bs_social, ps_cognitive, ps_social}) {
    if (!std::isfinite(v))
      throw InvalidArgument("swarm weights must be finite");
  }
}

double optimal_power(double worst_gain, double gain_budget, double max_power)
{
  if (!(gain_budget >= 0.0))
    throw InvalidArgument("beam-gain budget must be non-negative");
  if (!(worst_gain > 0.0))
    return max_power;
  return std::min(gain_budget / worst_gain, max_power);
}

double optimal_power(const PinchLayout& layout, std::span<const cplx> unit_weights,
                     std::span<const Vec3> samples, double gain_budget, double max_power,
                     const PassGeometry& geom, const PhysConstants& pc)
{
  return optimal_power(worst_case_gain(layout, unit_weights, samples, geom, pc), gain_budget, max_power);
}

std::vector<double> clamp_ps(std::span<const double> position)
{
  std::vector<double> out(position.begin(), position.end());
  for (auto& v : out)
    v = std::clamp(v, 0.0, 1.0);
  return out;
}

CVec normalize_bs(std::span<const cplx> position)
{
  return normalized(position);
}

Problem::Problem(Scenario sc) : sc_(std::move(sc))
{
  sc_.geometry.validate();
  sc_.willie_noise.validate();
  samples_ = sc_.willie_samples();
  budget_ = sc_.gain_budget();
  usable_ = sc_.geometry.usable_length();
}

PinchLayout Problem::layout_for(std::span<const double> ps_position) const
{
  PinchLayout layout;
  layout.x_init.reserve(ps_position.size());
  for (double p : ps_position)
    layout.x_init.push_back(usable_ * std::clamp(p, 0.0, 1.0));
  return layout;
}

CVec Problem::channel(const PinchLayout& layout, std::span<const cplx> guided, const Vec3& r) const
{
  const auto& geom = sc_.geometry;
  const auto m_count = static_cast<std::size_t>(geom.pas_per_waveguide);
  const double amp = std::sqrt(sc_.pc.eta);
  CVec out(dims());
  for (std::size_t n = 0; n < out.size(); ++n) {
    const double dy = r.y - geom.waveguide_y[n];
    const double dz = geom.height - r.z;
    cplx acc{0.0, 0.0};
    for (std::size_t m = 0; m < m_count; ++m) {
      const double dx = r.x - layout.position(geom, n, m);
      const double d = std::sqrt(dx * dx + dy * dy + dz * dz);
      // conj(sqrt(eta) e^{-j k d} / d) = sqrt(eta) e^{+j k d} / d
      const cplx h_conj = amp * cplx{std::cos(sc_.pc.k_free * d), std::sin(sc_.pc.k_free * d)} / d;
      acc += h_conj * guided[n * m_count + m];
    }
    out[n] = acc;
  }
  return out;
}

Problem::Evaluation Problem::evaluate(std::span<const double> ps_position, std::span<const cplx> unit_weights) const
{
  const auto layout = layout_for(ps_position);
  const auto& geom = sc_.geometry;
  const auto m_count = static_cast<std::size_t>(geom.pas_per_waveguide);

  CVec guided(dims() * m_count);
  for (std::size_t n = 0; n < dims(); ++n) {
    const auto g = inwg_vector(layout.waveguide_positions(geom, n), sc_.pc);
    std::copy(g.begin(), g.end(), guided.begin() + static_cast<std::ptrdiff_t>(n * m_count));
  }

  Evaluation ev;
  ev.unit_snr = std::norm(pinch::apply(channel(layout, guided, sc_.bob), unit_weights)) / sc_.bob_noise;
  for (const auto& r : samples_)
    ev.worst_gain = std::max(ev.worst_gain, std::norm(pinch::apply(channel(layout, guided, r), unit_weights)));
  ev.power = optimal_power(ev.worst_gain, budget_, sc_.max_power);
  ev.rate = rate_from_snr(ev.power * ev.unit_snr);
  return ev;
}

TwinSwarms initialize(const Problem& problem, const PsoParams& params, Rng& rng)
{
  params.validate();
  const auto n = problem.dims();
  TwinSwarms s;

  s.ps.particles.resize(static_cast<std::size_t>(params.ps_population));
  for (auto& p : s.ps.particles) {
    p.position.resize(n);
    for (auto& v : p.position)
      v = uniform01(rng);
    p.velocity.assign(n, 0.0);
    p.best_position = p.position;
  }

  s.bs.particles.resize(static_cast<std::size_t>(params.bs_population));
  for (auto& p : s.bs.particles) {
    p.position = random_beam(n, rng);
    p.velocity.assign(n, cplx{0.0, 0.0});
    p.best_position = p.position;
  }

  s.ps.global_best = s.ps.particles.front().position;
  s.bs.global_best = s.bs.particles.front().position;
  return s;
}

void step(TwinSwarms& s, const Problem& problem, const PsoParams& params, Rng& rng)
{
  // Position swarm against the fixed beam.
  const CVec beam = normalize_bs(s.bs.global_best);
  for (auto& p : s.ps.particles) {
    p.position = clamp_ps(p.position);
    const double score = problem.fitness(p.position, beam);
    if (score > p.best_score) {
      p.best_score = score;
      p.best_position = p.position;
    }
    offer(s.best, p.position, beam, score);
  }
  refresh_global(s.ps);
  for (auto& p : s.ps.particles)
    move_particle(p, s.ps.global_best, params.ps_inertia, params.ps_cognitive, params.ps_social,
                  params.max_velocity, rng);

  // Beam swarm against the fixed layout.
  const std::vector<double> layout = s.ps.global_best;
  for (auto& p : s.bs.particles) {
    if (!(norm(p.position) > 0.0) || !std::isfinite(norm(p.position)))
      p.position = random_beam(problem.dims(), rng);
    p.position = normalize_bs(p.position);
    const double score = problem.fitness(layout, p.position);
    if (score > p.best_score) {
      p.best_score = score;
      p.best_position = p.position;
    }
    offer(s.best, layout, p.position, score);
  }
  refresh_global(s.bs);
  for (auto& p : s.bs.particles)
    move_particle(p, s.bs.global_best, params.bs_inertia, params.bs_cognitive, params.bs_social,
                  params.max_velocity, rng);
}

Solution solve(const Scenario& sc, const PsoParams& params)
{
  params.validate();
  const Problem problem(sc);
  Rng rng(params.seed);
  auto swarms = initialize(problem, params, rng);

  Solution sol;
  sol.trace.reserve(static_cast<std::size_t>(params.iterations));
  for (int t = 0; t < params.iterations; ++t) {
    step(swarms, problem, params, rng);
    sol.trace.push_back(swarms.best.score);
  }

  const auto ev = problem.evaluate(swarms.best.ps, swarms.best.bs);
  sol.weights = swarms.best.bs;
  sol.x_init = problem.layout_for(swarms.best.ps).x_init;
  sol.power = ev.power;
  sol.rate = ev.rate;
  return sol;
}

} // namespace pinch::mwmp
