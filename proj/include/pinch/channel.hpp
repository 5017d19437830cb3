#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace pinch {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

inline constexpr double kSpeedOfLight = 2.998e8;

struct Vec3
{
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

double distance(const Vec3& a, const Vec3& b);

/// Carrier-derived propagation constants. Build with derive_constants().
struct PhysConstants
{
  double carrier_freq = 0.0;      // Hz
  double wavelength = 0.0;        // free-space, m
  double guided_wavelength = 0.0; // in-waveguide, m
  double k_free = 0.0;            // rad/m
  double k_guided = 0.0;          // rad/m
  double eta = 0.0;               // lambda^2 / (16 pi^2), m^2
  double n_eff = 1.0;
};

PhysConstants derive_constants(double carrier_freq, double n_eff);

/// Waveguides run parallel to the x-axis at a common height, each fed at x = 0.
/// A single waveguide carrying one antenna at y = 0 is the SWSP special case.
struct PassGeometry
{
  double height = 3.0;
  double length = 25.0;
  int num_waveguides = 1;
  int pas_per_waveguide = 1;
  std::vector<double> waveguide_y{0.0};
  double pa_spacing = 0.0;
  double min_spacing = 0.0;

  /// Upper bound for the first antenna of each waveguide: L - spacing (M - 1).
  double usable_length() const;

  /// Throws InvalidArgument if any geometric invariant is violated.
  void validate() const;

  static PassGeometry single(double height, double length);

  /// N waveguides centred on y = 0 with the given separation.
  static PassGeometry uniform(int num_waveguides, int pas_per_waveguide, double height, double length,
                              double separation, double pa_spacing, double min_spacing);
};

/// First-antenna x coordinate per waveguide; the rest follow at fixed spacing.
struct PinchLayout
{
  std::vector<double> x_init;

  double position(const PassGeometry& geom, std::size_t waveguide, std::size_t antenna) const;
  std::vector<double> waveguide_positions(const PassGeometry& geom, std::size_t waveguide) const;
  void validate(const PassGeometry& geom) const;
};

/// Unit-norm per-waveguide weights plus a transmit power; w = sqrt(P) * weights.
struct BeamVector
{
  CVec weights;
  double power = 0.0;

  CVec full() const;
};

double norm(std::span<const cplx> v);
CVec normalized(std::span<const cplx> v);
BeamVector make_beam(std::span<const cplx> weights, double power);

/// Dot product without conjugation, i.e. the received amplitude h . w.
cplx apply(std::span<const cplx> channel, std::span<const cplx> weights);

cplx los_coeff(const Vec3& antenna, const Vec3& receiver, const PhysConstants& pc);
cplx inwg_phase(double x, const PhysConstants& pc);
CVec inwg_vector(std::span<const double> positions, const PhysConstants& pc);
CVec freespace_vector(std::span<const double> positions, double waveguide_y, const Vec3& receiver,
                      const PassGeometry& geom, const PhysConstants& pc);

/// Row vector h^H(X) G(X): the received amplitude for weights w is apply(result, w).
CVec effective_channel(const PinchLayout& layout, const Vec3& receiver, const PassGeometry& geom,
                       const PhysConstants& pc);

double snr_bob(const PinchLayout& layout, const BeamVector& beam, const Vec3& bob, double bob_noise,
               const PassGeometry& geom, const PhysConstants& pc);

struct GridSpec
{
  double x_min = 0.0;
  double x_max = 25.0;
  double y_min = -10.0;
  double y_max = 10.0;
  std::size_t nx = 251;
  std::size_t ny = 201;
};

struct GainGrid
{
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> values; // row-major, values[iy * xs.size() + ix]

  double at(std::size_t ix, std::size_t iy) const { return values[iy * xs.size() + ix]; }
};

GainGrid beam_pattern_grid(const PinchLayout& layout, const BeamVector& beam, const GridSpec& spec,
                           const PassGeometry& geom, const PhysConstants& pc, bool normalize);

} // namespace pinch
