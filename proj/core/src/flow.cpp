#include "gfront/flow.hpp"

#include <random>
#include <stdexcept>

#include "gfront/grid.hpp"

namespace gfront {

namespace {

// Reduce to [0, 2pi). fmod is exact, so coordinates that differ by an exactly
// representable multiple of 2pi reduce to identical doubles.
double wrap_angle(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

}  // namespace

void validate(const FlowSpec& spec) {
  if (spec.intensity < 0.0) throw std::invalid_argument("flow: intensity A must be >= 0");
  if (spec.kind == FlowKind::Unsteady && !(spec.omega > 0.0)) {
    throw std::invalid_argument("flow: omega must be > 0 for the unsteady flow");
  }
}

FlowSample sample_flow(const FlowSpec& spec, double x, double y, double t) {
  const double xr = wrap_angle(x);
  const double yr = wrap_angle(y);
  const double cx = std::cos(xr), sx = std::sin(xr);
  const double cy = std::cos(yr), sy = std::sin(yr);
  const double phase = flow_phase(spec, t);
  const double A = spec.intensity;

  FlowSample s;
  s.u = A * (cy + sy * phase);
  s.v = A * (cx + sx * phase);
  s.du_dx = 0.0;
  s.dv_dy = 0.0;
  s.du_dy = A * (-sy + cy * phase);
  s.dv_dx = A * (-sx + cx * phase);
  return s;
}

StrainCoefficients strain_coefficients(const FlowSample& sample, double markstein) {
  if (markstein < 0.0) throw std::invalid_argument("strain_coefficients: d_M must be >= 0");
  StrainCoefficients c;
  c.a = markstein * sample.du_dx;
  c.b = markstein * sample.dv_dy;
  c.c = markstein * (sample.du_dy + sample.dv_dx);
  return c;
}

double verify_secant_form(double intensity, double omega, int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("verify_secant_form: samples must be >= 1");
  FlowSpec spec{FlowKind::Unsteady, intensity, omega};
  validate(spec);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, kTwoPi);
  std::uniform_real_distribution<double> time(0.0, 10.0 * kTwoPi / omega);

  double worst = 0.0;
  for (int n = 0; n < samples; ++n) {
    const double x = coord(rng), y = coord(rng), t = time(rng);
    const FlowSample direct = sample_flow(spec, x, y, t);
    // Phase form with the sign convention that matches the direct flow:
    // sec(theta)*cos(y - theta) = cos y + sin y * tan(theta), theta = arctan(cos wt).
    const double theta = std::atan(std::cos(omega * t));
    const double sec = 1.0 / std::cos(theta);
    const double u2 = intensity * sec * std::cos(y - theta);
    const double v2 = intensity * sec * std::cos(x - theta);
    worst = std::max(worst, std::abs(direct.u - u2));
    worst = std::max(worst, std::abs(direct.v - v2));
  }
  return worst;
}

}  // namespace gfront
