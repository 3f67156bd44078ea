#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace gfront {

inline constexpr double kTwoPi = 6.28318530717958647692528676655900577;

/// Uniform node-centered grid on [0,2pi)^2. Node (i,j) sits at (i*hx, j*hy);
/// there is no duplicated node at 2pi.
struct Grid {
  int nx = 0;
  int ny = 0;
  double hx = 0.0;
  double hy = 0.0;

  std::size_t cells() const { return static_cast<std::size_t>(nx) * ny; }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * ny + j; }
  double x(int i) const { return i * hx; }
  double y(int j) const { return j * hy; }
};

/// Throws std::invalid_argument if a node count is below the 8-node stencil minimum.
Grid make_grid(int nx, int ny);

/// Scalar field with an affine-periodic structure in x: the stored array is the
/// spatially periodic part u, and the total field is
///   total(i, j) = i*hx + u(i mod nx, j mod ny) + floor(i/nx)*x_shift.
/// x_shift = 2pi for level-set fields (total gains one period per wrap),
/// x_shift = 0 for plain periodic fields. Storage is row-major with j fastest.
struct ScalarField2D {
  Grid grid;
  double x_shift = 0.0;
  std::vector<double> values;

  double& at(int i, int j) { return values[grid.index(i, j)]; }
  const double& at(int i, int j) const { return values[grid.index(i, j)]; }
};

ScalarField2D make_field(const Grid& grid, double x_shift);

/// Total field at arbitrary signed logical indices. j wraps with no shift;
/// i wraps adding k*x_shift with k = floor(i/nx), applied as a single
/// multiply-add so the wrap count never accumulates rounding.
double ghost_value(const ScalarField2D& field, std::int64_t i, std::int64_t j);

/// Total-field values on the strip [2pi*k_min, 2pi*(k_max+1)) x [0,2pi).
/// Returned as ny rows; row j holds (k_max-k_min+1)*nx totals along x.
std::vector<std::vector<double>> extend_to_strip(const ScalarField2D& field, int k_min, int k_max);

/// Checkpoint I/O. Format: header "gfront-field v1 nx ny shift time" followed by
/// nx*ny values in row-major order, one per line, 17 significant digits.
void write_checkpoint(const ScalarField2D& field, double time, std::ostream& out);

struct Checkpoint {
  ScalarField2D field;
  double time = 0.0;
};
Checkpoint read_checkpoint(std::istream& in);

/// floor(a/b) for b > 0; exact for all signed a.
inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  return (a % b != 0 && (a < 0)) ? q - 1 : q;
}

}  // namespace gfront
