#pragma once

#include <vector>

#include "gfront/grid.hpp"

namespace gfront {

/// Regularization in the smoothness-weight denominators (classical default).
inline constexpr double kWenoEpsilon = 1e-6;

enum class Scheme { Weno5, FirstOrder };

struct OneSidedGradients {
  double p_minus = 0.0, p_plus = 0.0;
  double q_minus = 0.0, q_plus = 0.0;
};

/// One-sided derivative approximations of the total field at every node.
struct GradientField {
  Grid grid;
  std::vector<double> p_minus, p_plus, q_minus, q_plus;

  OneSidedGradients at(int i, int j) const {
    const std::size_t k = grid.index(i, j);
    return {p_minus[k], p_plus[k], q_minus[k], q_plus[k]};
  }
};

GradientField weno5_one_sided(const ScalarField2D& field);
GradientField first_order_one_sided(const ScalarField2D& field);
GradientField one_sided_gradients(const ScalarField2D& field, Scheme scheme);

// Low-level passes shared between the public gradient builders above and the
// integrator's fused right-hand-side kernel, so both paths produce identical
// bits.
//
// dfx holds x-direction divided differences of the total field: row r,
// 0 <= r < nx+5, stores (total(m+1,j) - total(m,j))/hx for m = r-3 and all j.
// The affine x-term enters as its exact per-node slope x_shift/(nx*hx).
// dfy holds the same along one grid row: entry r, 0 <= r < ny+5, is the
// difference for m = r-3 (periodic in y, never shifted).
std::size_t dfx_size(const Grid& g);
void build_dfx(const double* values, const Grid& g, double x_shift, double* dfx);
void build_dfy_row(const double* values, const Grid& g, int i, double* dfy);
void one_sided_x_row(Scheme s, const double* dfx, const Grid& g, int i, double* pm, double* pp);
void one_sided_y_row(Scheme s, const double* dfy, int ny, double* qm, double* qp);

inline void build_dfx(const ScalarField2D& f, double* dfx) {
  build_dfx(f.values.data(), f.grid, f.x_shift, dfx);
}
inline void build_dfy_row(const ScalarField2D& f, int i, double* dfy) {
  build_dfy_row(f.values.data(), f.grid, i, dfy);
}

}  // namespace gfront
