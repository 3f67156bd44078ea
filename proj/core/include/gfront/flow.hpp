#pragma once

#include <cmath>
#include <cstdint>

namespace gfront {

enum class FlowKind { Steady, Unsteady };

/// Cellular flow family: steady A<cos y, cos x> and its time-periodic
/// perturbation A<cos y + sin y cos(wt), cos x + sin x cos(wt)>.
struct FlowSpec {
  FlowKind kind = FlowKind::Steady;
  double intensity = 0.0;  // A >= 0
  double omega = 0.0;      // temporal frequency, ignored for Steady
};

/// Velocity components and the exact spatial Jacobian at a point and time.
/// For this flow family du_dx and dv_dy vanish identically (u depends only on
/// y and t, v only on x and t).
struct FlowSample {
  double u = 0.0, v = 0.0;
  double du_dx = 0.0, du_dy = 0.0;
  double dv_dx = 0.0, dv_dy = 0.0;
};

struct StrainCoefficients {
  double a = 0.0;  // d_M * du/dx
  double b = 0.0;  // d_M * dv/dy
  double c = 0.0;  // d_M * (du/dy + dv/dx)
};

/// Throws std::invalid_argument on A < 0 or (Unsteady and omega <= 0).
void validate(const FlowSpec& spec);

/// Time-phase factor multiplying the sin() part of the velocity:
/// cos(omega*t) for the unsteady flow, 0 for the steady one.
inline double flow_phase(const FlowSpec& spec, double t) {
  return spec.kind == FlowKind::Unsteady ? std::cos(spec.omega * t) : 0.0;
}

FlowSample sample_flow(const FlowSpec& spec, double x, double y, double t);

StrainCoefficients strain_coefficients(const FlowSample& sample, double markstein);

/// Cross-checks the direct unsteady form against its secant/phase rewrite
/// A*sec(theta)*<cos(y-theta), cos(x-theta)>, theta = arctan(cos(wt)), at
/// `samples` random (x,y,t) points. Returns the max componentwise discrepancy.
double verify_secant_form(double intensity, double omega, int samples,
                          std::uint64_t seed = 0x9e3779b97f4a7c15ull);

}  // namespace gfront
