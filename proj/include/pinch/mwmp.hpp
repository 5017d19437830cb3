#pragma once

#include "pinch/scenario.hpp"

#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

namespace pinch::mwmp {

struct PsoParams
{
  int bs_population = 30; // beamforming-seeking particles
  int ps_population = 30; // position-seeking particles
  double bs_inertia = 0.8;
  double ps_inertia = 0.8;
  double bs_cognitive = 2.0;
  double bs_social = 2.0;
  double ps_cognitive = 2.0;
  double ps_social = 2.0;
  int iterations = 100;
  double max_velocity = 0.3;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Transmit power that saturates the worst sampled Willie gain or the budget.
/// A zero worst-case gain (perfect null) is budget-limited.
double optimal_power(double worst_gain, double gain_budget, double max_power);

double optimal_power(const PinchLayout& layout, std::span<const cplx> unit_weights,
                     std::span<const Vec3> samples, double gain_budget, double max_power,
                     const PassGeometry& geom, const PhysConstants& pc);

/// Componentwise clamp of a position-seeking particle to [0, 1].
std::vector<double> clamp_ps(std::span<const double> position);

/// Unit-norm copy of a beamforming-seeking particle. Throws InvalidArgument on
/// a zero vector; the swarm re-randomizes such particles instead.
CVec normalize_bs(std::span<const cplx> position);

/// Fitness landscape for one scenario: position particles live in [0, 1]^N and
/// map to metres as x_init = L' * p, beam particles are unit-norm weights.
class Problem
{
public:
  explicit Problem(Scenario sc);

  struct Evaluation
  {
    double rate = 0.0;
    double power = 0.0;
    double worst_gain = 0.0;
    double unit_snr = 0.0; // Bob's SNR at unit transmit power
  };

  Evaluation evaluate(std::span<const double> ps_position, std::span<const cplx> unit_weights) const;
  double fitness(std::span<const double> ps_position, std::span<const cplx> unit_weights) const
  {
    return evaluate(ps_position, unit_weights).rate;
  }

  PinchLayout layout_for(std::span<const double> ps_position) const;

  const Scenario& scenario() const { return sc_; }
  const std::vector<Vec3>& samples() const { return samples_; }
  double gain_budget() const { return budget_; }
  std::size_t dims() const { return static_cast<std::size_t>(sc_.geometry.num_waveguides); }

private:
  CVec channel(const PinchLayout& layout, std::span<const cplx> guided, const Vec3& r) const;

  Scenario sc_;
  std::vector<Vec3> samples_;
  double budget_ = 0.0;
  double usable_ = 0.0;
};

template <typename T>
struct Particle
{
  std::vector<T> position;
  std::vector<T> velocity;
  std::vector<T> best_position;
  double best_score = -std::numeric_limits<double>::infinity();
};

template <typename T>
struct Swarm
{
  std::vector<Particle<T>> particles;
  std::vector<T> global_best;
  double global_score = -std::numeric_limits<double>::infinity();
};

/// Best pair actually evaluated so far. Swarm-level scores can be stale because
/// each swarm is scored against the other's global best at the time.
struct Incumbent
{
  std::vector<double> ps;
  CVec bs;
  double score = -std::numeric_limits<double>::infinity();
};

struct TwinSwarms
{
  Swarm<double> ps;
  Swarm<cplx> bs;
  Incumbent best;
};

using Rng = std::mt19937_64;

TwinSwarms initialize(const Problem& problem, const PsoParams& params, Rng& rng);

/// One alternating iteration: position swarm against the fixed beam global
/// best, then beam swarm against the fixed position global best.
void step(TwinSwarms& swarms, const Problem& problem, const PsoParams& params, Rng& rng);

struct Solution
{
  CVec weights;               // unit norm
  std::vector<double> x_init; // metres
  double power = 0.0;
  double rate = 0.0;
  std::vector<double> trace;  // incumbent fitness after each iteration
};

Solution solve(const Scenario& sc, const PsoParams& params);

} // namespace pinch::mwmp
