#include "pinch/channel.hpp"

#include "pinch/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace pinch {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

cplx unit_phasor(double phase)
{
  return {std::cos(phase), std::sin(phase)};
}

} // namespace

double distance(const Vec3& a, const Vec3& b)
{
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

PhysConstants derive_constants(double carrier_freq, double n_eff)
{
  if (!(carrier_freq > 0.0) || !std::isfinite(carrier_freq))
    throw InvalidArgument("carrier frequency must be positive, got " + std::to_string(carrier_freq));
  if (!(n_eff >= 1.0) || !std::isfinite(n_eff))
    throw InvalidArgument("effective refractive index must be >= 1, got " + std::to_string(n_eff));

  PhysConstants pc;
  pc.carrier_freq = carrier_freq;
  pc.n_eff = n_eff;
  pc.wavelength = kSpeedOfLight / carrier_freq;
  pc.guided_wavelength = pc.wavelength / n_eff;
  pc.k_free = kTwoPi / pc.wavelength;
  pc.k_guided = kTwoPi / pc.guided_wavelength;
  pc.eta = pc.wavelength * pc.wavelength / (16.0 * std::numbers::pi * std::numbers::pi);
  return pc;
}

double PassGeometry::usable_length() const
{
  return length - pa_spacing * static_cast<double>(pas_per_waveguide - 1);
}

void PassGeometry::validate() const
{
  if (!(height > 0.0))
    throw InvalidArgument("waveguide height must be positive");
  if (!(length > 0.0))
    throw InvalidArgument("waveguide length must be positive");
  if (num_waveguides < 1 || pas_per_waveguide < 1)
    throw InvalidArgument("need at least one waveguide and one antenna per waveguide");
  if (waveguide_y.size() != static_cast<std::size_t>(num_waveguides))
    throw InvalidArgument("waveguide_y must list one coordinate per waveguide");
  if (pas_per_waveguide > 1) {
    if (!(min_spacing > 0.0) || pa_spacing < min_spacing)
      throw InvalidArgument("antenna spacing must satisfy spacing >= min_spacing > 0");
  }
  if (usable_length() < 0.0)
    throw InvalidArgument("antennas do not fit on the waveguide at the requested spacing");
}

PassGeometry PassGeometry::single(double height, double length)
{
  PassGeometry g;
  g.height = height;
  g.length = length;
  return g;
}

PassGeometry PassGeometry::uniform(int num_waveguides, int pas_per_waveguide, double height, double length,
                                   double separation, double pa_spacing, double min_spacing)
{
  PassGeometry g;
  g.height = height;
  g.length = length;
  g.num_waveguides = num_waveguides;
  g.pas_per_waveguide = pas_per_waveguide;
  g.pa_spacing = pa_spacing;
  g.min_spacing = min_spacing;
  g.waveguide_y.clear();
  const double centre = 0.5 * static_cast<double>(num_waveguides - 1);
  for (int n = 0; n < num_waveguides; ++n)
    g.waveguide_y.push_back((static_cast<double>(n) - centre) * separation);
  g.validate();
  return g;
}

double PinchLayout::position(const PassGeometry& geom, std::size_t waveguide, std::size_t antenna) const
{
  return x_init[waveguide] + static_cast<double>(antenna) * geom.pa_spacing;
}

std::vector<double> PinchLayout::waveguide_positions(const PassGeometry& geom, std::size_t waveguide) const
{
  std::vector<double> xs(static_cast<std::size_t>(geom.pas_per_waveguide));
  for (std::size_t m = 0; m < xs.size(); ++m)
    xs[m] = position(geom, waveguide, m);
  return xs;
}

void PinchLayout::validate(const PassGeometry& geom) const
{
  if (x_init.size() != static_cast<std::size_t>(geom.num_waveguides))
    throw InvalidArgument("layout must hold one initial position per waveguide");
  const double upper = geom.usable_length();
  for (double x : x_init) {
    if (!(x >= 0.0) || x > upper)
      throw InvalidArgument("initial antenna position " + std::to_string(x) + " outside [0, " +
                            std::to_string(upper) + "]");
  }
}

CVec BeamVector::full() const
{
  CVec w(weights);
  const double scale = std::sqrt(power);
  for (auto& v : w)
    v *= scale;
  return w;
}

double norm(std::span<const cplx> v)
{
  double s = 0.0;
  for (const auto& c : v)
    s += std::norm(c);
  return std::sqrt(s);
}

CVec normalized(std::span<const cplx> v)
{
  const double n = norm(v);
  if (!(n > 0.0) || !std::isfinite(n))
    throw InvalidArgument("cannot normalize a zero or non-finite vector");
  CVec out(v.begin(), v.end());
  for (auto& c : out)
    c /= n;
  return out;
}

BeamVector make_beam(std::span<const cplx> weights, double power)
{
  if (!(power >= 0.0))
    throw InvalidArgument("transmit power must be non-negative");
  return BeamVector{normalized(weights), power};
}

cplx apply(std::span<const cplx> channel, std::span<const cplx> weights)
{
  if (channel.size() != weights.size())
    throw InvalidArgument("channel and weight dimensions differ");
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < channel.size(); ++i)
    acc += channel[i] * weights[i];
  return acc;
}

cplx los_coeff(const Vec3& antenna, const Vec3& receiver, const PhysConstants& pc)
{
  const double d = distance(antenna, receiver);
  if (!(d > 0.0))
    throw DegenerateGeometry("antenna and receiver coincide");
  return std::sqrt(pc.eta) * unit_phasor(-pc.k_free * d) / d;
}

cplx inwg_phase(double x, const PhysConstants& pc)
{
  return unit_phasor(-pc.k_guided * x);
}

CVec inwg_vector(std::span<const double> positions, const PhysConstants& pc)
{
  if (positions.empty())
    throw InvalidArgument("in-waveguide vector needs at least one antenna");
  const double alpha = 1.0 / std::sqrt(static_cast<double>(positions.size()));
  CVec g(positions.size());
  for (std::size_t m = 0; m < positions.size(); ++m)
    g[m] = alpha * inwg_phase(positions[m], pc);
  return g;
}

CVec freespace_vector(std::span<const double> positions, double waveguide_y, const Vec3& receiver,
                      const PassGeometry& geom, const PhysConstants& pc)
{
  CVec h(positions.size());
  for (std::size_t m = 0; m < positions.size(); ++m)
    h[m] = los_coeff(Vec3{positions[m], waveguide_y, geom.height}, receiver, pc);
  return h;
}

CVec effective_channel(const PinchLayout& layout, const Vec3& receiver, const PassGeometry& geom,
                       const PhysConstants& pc)
{
  const auto n_wg = static_cast<std::size_t>(geom.num_waveguides);
  if (layout.x_init.size() != n_wg)
    throw InvalidArgument("layout does not match the number of waveguides");

  CVec out(n_wg);
  for (std::size_t n = 0; n < n_wg; ++n) {
    const auto xs = layout.waveguide_positions(geom, n);
    const auto g = inwg_vector(xs, pc);
    const auto h = freespace_vector(xs, geom.waveguide_y[n], receiver, geom, pc);
    cplx acc{0.0, 0.0};
    for (std::size_t m = 0; m < xs.size(); ++m)
      acc += std::conj(h[m]) * g[m];
    out[n] = acc;
  }
  return out;
}

double snr_bob(const PinchLayout& layout, const BeamVector& beam, const Vec3& bob, double bob_noise,
               const PassGeometry& geom, const PhysConstants& pc)
{
  if (!(bob_noise > 0.0))
    throw InvalidArgument("noise power must be positive");
  const auto eff = effective_channel(layout, bob, geom, pc);
  return beam.power * std::norm(pinch::apply(eff, beam.weights)) / bob_noise;
}

GainGrid beam_pattern_grid(const PinchLayout& layout, const BeamVector& beam, const GridSpec& spec,
                           const PassGeometry& geom, const PhysConstants& pc, bool normalize)
{
  if (spec.nx == 0 || spec.ny == 0)
    throw InvalidArgument("beam pattern grid is empty");
  if (spec.x_max < spec.x_min || spec.y_max < spec.y_min)
    throw InvalidArgument("beam pattern grid bounds are inverted");

  auto axis = [](double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
      v[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
  };

  GainGrid grid;
  grid.xs = axis(spec.x_min, spec.x_max, spec.nx);
  grid.ys = axis(spec.y_min, spec.y_max, spec.ny);
  grid.values.resize(spec.nx * spec.ny);

  const auto w = beam.full();
  for (std::size_t iy = 0; iy < spec.ny; ++iy) {
    for (std::size_t ix = 0; ix < spec.nx; ++ix) {
      const Vec3 r{grid.xs[ix], grid.ys[iy], 0.0};
      grid.values[iy * spec.nx + ix] = std::norm(pinch::apply(effective_channel(layout, r, geom, pc), w));
    }
  }

  if (normalize) {
    const double peak = *std::max_element(grid.values.begin(), grid.values.end());
    if (peak > 0.0) {
      for (auto& v : grid.values)
        v /= peak;
    }
  }
  return grid;
}

} // namespace pinch
