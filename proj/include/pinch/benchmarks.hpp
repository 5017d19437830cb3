#pragma once

#include "pinch/scenario.hpp"

#include <string_view>

namespace pinch::bench {

enum class Kind
{
  MimoZf,
  MimoMrt,
  PassZf,
  PassMrt,
};

std::string_view name(Kind kind);

/// Half-wavelength ULA of N elements along the x-axis at height h, centred on
/// the origin. Returns the per-element LoS coefficients toward r.
CVec ula_channel(const Vec3& r, int num_elements, double height, const PhysConstants& pc);

/// Unit weights maximizing |h . w|.
CVec mrt_weights(std::span<const cplx> channel);

/// Unit weights maximizing |h_b . w| subject to h_w . w = 0.
CVec zf_weights(std::span<const cplx> bob_channel, std::span<const cplx> willie_channel);

/// Every waveguide's antenna group centred on Bob's x, clamped to the waveguide.
PinchLayout heuristic_pass_layout(const Vec3& bob, const PassGeometry& geom);

struct Outcome
{
  CVec weights;
  double power = 0.0;
  double rate = 0.0;
  double worst_gain = 0.0; // unit-power max over Willie's sample set
};

Outcome evaluate(Kind kind, const Scenario& sc);

} // namespace pinch::bench
