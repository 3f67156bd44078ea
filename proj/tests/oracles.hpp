// Test-only oracles, independent of the implementation paths they check.
#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "gfront/grid.hpp"

namespace oracle {

// The modeled Hamiltonian evaluated directly on collapsed arguments:
// u p + v q + s_L |grad| + (a p^2 + b q^2 + c p q)/|grad|.
inline double hamiltonian(double p, double q, double u, double v, double s_l, double a, double b,
                          double c) {
  const double norm = std::sqrt(p * p + q * q);
  double h = u * p + v * q + s_l * norm;
  if (norm > 0.0) h += (a * p * p + b * q * q + c * p * q) / norm;
  return h;
}

// Least-squares slope of (t, x) pairs.
inline double lsq_slope(const std::vector<double>& t, const std::vector<double>& x) {
  const std::size_t n = t.size();
  double tm = 0.0, xm = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    tm += t[k];
    xm += x[k];
  }
  tm /= n;
  xm /= n;
  double stt = 0.0, stx = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    stt += (t[k] - tm) * (t[k] - tm);
    stx += (t[k] - tm) * (x[k] - xm);
  }
  return stx / stt;
}

// Staircase front trajectory: X jumps by `rise` at multiples of `tread`,
// linearly interpolated within each riser of width `riser_frac*tread`.
inline double staircase(double t, double rise, double tread, double riser_frac = 0.05) {
  const double k = std::floor(t / tread);
  const double frac = t / tread - k;
  const double ramp = frac < (1.0 - riser_frac) ? 0.0 : (frac - (1.0 - riser_frac)) / riser_frac;
  return rise * (k + ramp);
}

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen);
  }
  double signed_mag(double lo, double hi) {
    const double v = uniform(lo, hi);
    return gen() % 2 ? v : -v;
  }
  // Magnitude mix used by the monotonicity samplers: exact zeros, near-zero
  // values and O(1) values, all signs.
  double grad_atom() {
    const int kind = static_cast<int>(gen() % 8);
    if (kind == 0) return 0.0;
    if (kind == 1) return signed_mag(0.005, 0.02);
    return signed_mag(0.02, 3.0);
  }
};

inline gfront::ScalarField2D field_from(const gfront::Grid& g, double x_shift,
                                        double (*f)(double, double)) {
  auto out = gfront::make_field(g, x_shift);
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) out.at(i, j) = f(g.x(i), g.y(j));
  }
  return out;
}

}  // namespace oracle
