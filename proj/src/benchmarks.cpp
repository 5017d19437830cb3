#include "pinch/benchmarks.hpp"

#include "pinch/errors.hpp"
#include "pinch/mwmp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace pinch::bench {

std::string_view name(Kind kind)
{
  switch (kind) {
  case Kind::MimoZf: return "mimo_zf";
  case Kind::MimoMrt: return "mimo_mrt";
  case Kind::PassZf: return "pass_zf";
  case Kind::PassMrt: return "pass_mrt";
  }
  return "unknown";
}

CVec ula_channel(const Vec3& r, int num_elements, double height, const PhysConstants& pc)
{
  if (num_elements < 1)
    throw InvalidArgument("ULA needs at least one element");
  CVec h(static_cast<std::size_t>(num_elements));
  const double centre = 0.5 * static_cast<double>(num_elements + 1);
  for (int n = 1; n <= num_elements; ++n) {
    const double x = (static_cast<double>(n) - centre) * 0.5 * pc.wavelength;
    h[static_cast<std::size_t>(n - 1)] = los_coeff(Vec3{x, 0.0, height}, r, pc);
  }
  return h;
}

CVec mrt_weights(std::span<const cplx> channel)
{
  const double n = norm(channel);
  if (!(n > 0.0))
    throw DegenerateChannel("MRT needs a nonzero channel");
  CVec w(channel.size());
  for (std::size_t i = 0; i < w.size(); ++i)
    w[i] = std::conj(channel[i]) / n;
  return w;
}

CVec zf_weights(std::span<const cplx> bob_channel, std::span<const cplx> willie_channel)
{
  if (bob_channel.size() != willie_channel.size())
    throw InvalidArgument("ZF channel dimensions differ");
  if (bob_channel.size() < 2)
    throw InvalidArgument("ZF needs at least two transmit dimensions");
  const double wn = norm(willie_channel);
  if (!(wn > 0.0))
    throw DegenerateChannel("ZF needs a nonzero Willie channel");

  // With u = conj(h_b) and c = conj(h_w): w ~ u - c (c^H u) / (c^H c).
  cplx proj{0.0, 0.0};
  for (std::size_t i = 0; i < bob_channel.size(); ++i)
    proj += willie_channel[i] * std::conj(bob_channel[i]);
  proj /= wn * wn;

  CVec w(bob_channel.size());
  for (std::size_t i = 0; i < w.size(); ++i)
    w[i] = std::conj(bob_channel[i]) - std::conj(willie_channel[i]) * proj;

  const double residual = norm(w);
  if (!(residual > 1e-12 * norm(bob_channel)))
    throw NullSpaceEmpty("Bob's channel is parallel to Willie's; nothing survives the null");
  for (auto& v : w)
    v /= residual;

  // One re-projection pass removes the rounding left by the first.
  cplx leak{0.0, 0.0};
  for (std::size_t i = 0; i < w.size(); ++i)
    leak += willie_channel[i] * w[i];
  for (std::size_t i = 0; i < w.size(); ++i)
    w[i] -= std::conj(willie_channel[i]) * leak / (wn * wn);
  return normalized(w);
}

PinchLayout heuristic_pass_layout(const Vec3& bob, const PassGeometry& geom)
{
  const double half_span = 0.5 * geom.pa_spacing * static_cast<double>(geom.pas_per_waveguide - 1);
  const double x0 = std::clamp(bob.x - half_span, 0.0, geom.usable_length());
  return PinchLayout{std::vector<double>(static_cast<std::size_t>(geom.num_waveguides), x0)};
}

Outcome evaluate(Kind kind, const Scenario& sc)
{
  std::function<CVec(const Vec3&)> channel;
  const bool mimo = kind == Kind::MimoZf || kind == Kind::MimoMrt;
  PinchLayout layout;
  if (mimo) {
    channel = [&](const Vec3& r) {
      return ula_channel(r, sc.geometry.num_waveguides, sc.geometry.height, sc.pc);
    };
  } else {
    layout = heuristic_pass_layout(sc.bob, sc.geometry);
    channel = [&](const Vec3& r) { return effective_channel(layout, r, sc.geometry, sc.pc); };
  }

  const CVec hb = channel(sc.bob);
  Outcome out;
  if (kind == Kind::MimoZf || kind == Kind::PassZf)
    out.weights = zf_weights(hb, channel(sc.willie.centre));
  else
    out.weights = mrt_weights(hb);

  for (const auto& r : sc.willie_samples())
    out.worst_gain = std::max(out.worst_gain, std::norm(pinch::apply(channel(r), out.weights)));
  out.power = mwmp::optimal_power(out.worst_gain, sc.gain_budget(), sc.max_power);
  out.rate = rate_from_snr(out.power * std::norm(pinch::apply(hb, out.weights)) / sc.bob_noise);
  return out;
}

} // namespace pinch::bench
