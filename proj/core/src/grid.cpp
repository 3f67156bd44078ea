#include "gfront/grid.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace gfront {

namespace {
constexpr int kMinNodes = 8;  // WENO5 needs 7 distinct columns/rows plus one
}

Grid make_grid(int nx, int ny) {
  if (nx < kMinNodes || ny < kMinNodes) {
    throw std::invalid_argument("make_grid: node counts must be >= " + std::to_string(kMinNodes) +
                                " (got " + std::to_string(nx) + "x" + std::to_string(ny) + ")");
  }
  Grid g;
  g.nx = nx;
  g.ny = ny;
  g.hx = kTwoPi / nx;
  g.hy = kTwoPi / ny;
  return g;
}

ScalarField2D make_field(const Grid& grid, double x_shift) {
  ScalarField2D f;
  f.grid = grid;
  f.x_shift = x_shift;
  f.values.assign(grid.cells(), 0.0);
  return f;
}

double ghost_value(const ScalarField2D& field, std::int64_t i, std::int64_t j) {
  const Grid& g = field.grid;
  const std::int64_t k = floor_div(i, g.nx);
  const int iw = static_cast<int>(i - k * g.nx);
  const int jw = static_cast<int>(j - floor_div(j, g.ny) * g.ny);
  const double interior = field.at(iw, jw) + iw * g.hx;
  if (k == 0) return interior;
  return interior + static_cast<double>(k) * field.x_shift;
}

std::vector<std::vector<double>> extend_to_strip(const ScalarField2D& field, int k_min, int k_max) {
  if (k_min > k_max) throw std::invalid_argument("extend_to_strip: k_min > k_max");
  const Grid& g = field.grid;
  const int copies = k_max - k_min + 1;
  std::vector<std::vector<double>> rows(g.ny, std::vector<double>(static_cast<std::size_t>(copies) * g.nx));
  for (int j = 0; j < g.ny; ++j) {
    auto& row = rows[j];
    for (int k = k_min; k <= k_max; ++k) {
      const double shift = static_cast<double>(k) * field.x_shift;
      const std::size_t base = static_cast<std::size_t>(k - k_min) * g.nx;
      for (int i = 0; i < g.nx; ++i) {
        row[base + i] = field.at(i, j) + i * g.hx + shift;
      }
    }
  }
  return rows;
}

void write_checkpoint(const ScalarField2D& field, double time, std::ostream& out) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g %.17g", field.x_shift, time);
  out << "gfront-field v1 " << field.grid.nx << ' ' << field.grid.ny << ' ' << buf << '\n';
  for (double v : field.values) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf << '\n';
  }
}

Checkpoint read_checkpoint(std::istream& in) {
  std::string magic, version;
  int nx = 0, ny = 0;
  double shift = 0.0, time = 0.0;
  if (!(in >> magic >> version >> nx >> ny >> shift >> time)) {
    throw std::runtime_error("read_checkpoint: malformed header");
  }
  if (magic != "gfront-field" || version != "v1") {
    throw std::runtime_error("read_checkpoint: unrecognized header '" + magic + " " + version + "'");
  }
  Checkpoint cp;
  cp.field = make_field(make_grid(nx, ny), shift);
  cp.time = time;
  for (double& v : cp.field.values) {
    if (!(in >> v)) throw std::runtime_error("read_checkpoint: truncated value block");
  }
  return cp;
}

}  // namespace gfront
