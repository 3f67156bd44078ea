#include "gfront/weno.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gfront {

namespace {

// Left-biased fifth-order WENO derivative from five consecutive divided
// differences d0..d4; d2 = (G_i - G_{i-1})/h is the immediate upwind slope.
// Evaluated as d2 plus stencil corrections built from second differences, so
// data with equal differences (linear total fields) reproduces d2 exactly.
// Weights are the classic Jiang-Shu ones: linear weights (1/10, 3/5, 3/10),
// smoothness indicators beta_k, epsilon added in the denominators.
inline double weno5_left(double d0, double d1, double d2, double d3, double d4) {
  const double a = d1 - d0;
  const double b = d2 - d1;
  const double c = d3 - d2;
  const double e = d4 - d3;

  const double k1312 = 13.0 / 12.0;
  const double beta0 = k1312 * (b - a) * (b - a) + 0.25 * (3.0 * b - a) * (3.0 * b - a);
  const double beta1 = k1312 * (c - b) * (c - b) + 0.25 * (b + c) * (b + c);
  const double beta2 = k1312 * (e - c) * (e - c) + 0.25 * (3.0 * c - e) * (3.0 * c - e);

  const double q0 = kWenoEpsilon + beta0;
  const double q1 = kWenoEpsilon + beta1;
  const double q2 = kWenoEpsilon + beta2;
  const double s0 = q0 * q0, s1 = q1 * q1, s2 = q2 * q2;
  // gamma_k / (eps+beta_k)^2 rationalized to a single division
  const double w0 = s1 * s2;
  const double w1 = 6.0 * (s0 * s2);
  const double w2 = 3.0 * (s0 * s1);

  const double num = w0 * (5.0 * b - 2.0 * a) + w1 * (b + 2.0 * c) + w2 * (4.0 * c - e);
  return d2 + num / (6.0 * (w0 + w1 + w2));
}

inline int wrap(int m, int n) { return (m + n) % n; }

}  // namespace

std::size_t dfx_size(const Grid& g) {
  return static_cast<std::size_t>(g.nx + 5) * g.ny;
}

void build_dfx(const double* values, const Grid& g, double x_shift, double* dfx) {
  const int nx = g.nx, ny = g.ny;
  const double inv_hx = 1.0 / g.hx;
  // Exact slope of the structural x-term per node spacing (1.0 for level-set
  // fields on power-of-two grids, 0.0 for plain periodic fields).
  const double bias = x_shift / (nx * g.hx);
  const double* v = values;
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int r = 0; r < nx + 5; ++r) {
    const int m = r - 3;
    const double* row0 = v + static_cast<std::size_t>(wrap(m, nx)) * ny;
    const double* row1 = v + static_cast<std::size_t>(wrap(m + 1, nx)) * ny;
    double* out = dfx + static_cast<std::size_t>(r) * ny;
    for (int j = 0; j < ny; ++j) {
      out[j] = (row1[j] - row0[j]) * inv_hx + bias;
    }
  }
}

void build_dfy_row(const double* values, const Grid& g, int i, double* dfy) {
  const int ny = g.ny;
  const double inv_hy = 1.0 / g.hy;
  const double* v = values + static_cast<std::size_t>(i) * ny;
  for (int m = 0; m < ny - 1; ++m) {
    dfy[m + 3] = (v[m + 1] - v[m]) * inv_hy;
  }
  for (int m = -3; m < 0; ++m) {
    dfy[m + 3] = (v[wrap(m + 1, ny)] - v[wrap(m, ny)]) * inv_hy;
  }
  for (int m = ny - 1; m < ny + 2; ++m) {
    dfy[m + 3] = (v[wrap(m + 1, ny)] - v[wrap(m, ny)]) * inv_hy;
  }
}

void one_sided_x_row(Scheme s, const double* dfx, const Grid& g, int i, double* pm, double* pp) {
  const int ny = g.ny;
  const double* r0 = dfx + static_cast<std::size_t>(i + 0) * ny;
  const double* r1 = dfx + static_cast<std::size_t>(i + 1) * ny;
  const double* r2 = dfx + static_cast<std::size_t>(i + 2) * ny;
  const double* r3 = dfx + static_cast<std::size_t>(i + 3) * ny;
  const double* r4 = dfx + static_cast<std::size_t>(i + 4) * ny;
  const double* r5 = dfx + static_cast<std::size_t>(i + 5) * ny;
  if (s == Scheme::FirstOrder) {
    for (int j = 0; j < ny; ++j) {
      pm[j] = r2[j];
      pp[j] = r3[j];
    }
    return;
  }
  for (int j = 0; j < ny; ++j) {
    const double d1 = r1[j], d2 = r2[j], d3 = r3[j], d4 = r4[j];
    pm[j] = weno5_left(r0[j], d1, d2, d3, d4);
    // Right-biased reconstruction via mirror symmetry of the left kernel.
    pp[j] = -weno5_left(-r5[j], -d4, -d3, -d2, -d1);
  }
}

void one_sided_y_row(Scheme s, const double* dfy, int ny, double* qm, double* qp) {
  if (s == Scheme::FirstOrder) {
    for (int j = 0; j < ny; ++j) {
      qm[j] = dfy[j + 2];
      qp[j] = dfy[j + 3];
    }
    return;
  }
  for (int j = 0; j < ny; ++j) {
    const double d1 = dfy[j + 1], d2 = dfy[j + 2], d3 = dfy[j + 3], d4 = dfy[j + 4];
    qm[j] = weno5_left(dfy[j], d1, d2, d3, d4);
    qp[j] = -weno5_left(-dfy[j + 5], -d4, -d3, -d2, -d1);
  }
}

GradientField one_sided_gradients(const ScalarField2D& field, Scheme scheme) {
  const Grid& g = field.grid;
  GradientField out;
  out.grid = g;
  out.p_minus.resize(g.cells());
  out.p_plus.resize(g.cells());
  out.q_minus.resize(g.cells());
  out.q_plus.resize(g.cells());

  std::vector<double> dfx(dfx_size(g));
  build_dfx(field, dfx.data());

#ifdef _OPENMP
#pragma omp parallel
#endif
  {
    std::vector<double> dfy(g.ny + 5);
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t off = static_cast<std::size_t>(i) * g.ny;
      one_sided_x_row(scheme, dfx.data(), g, i, &out.p_minus[off], &out.p_plus[off]);
      build_dfy_row(field, i, dfy.data());
      one_sided_y_row(scheme, dfy.data(), g.ny, &out.q_minus[off], &out.q_plus[off]);
    }
  }
  return out;
}

GradientField weno5_one_sided(const ScalarField2D& field) {
  return one_sided_gradients(field, Scheme::Weno5);
}

GradientField first_order_one_sided(const ScalarField2D& field) {
  return one_sided_gradients(field, Scheme::FirstOrder);
}

}  // namespace gfront
