#pragma once

#include <cmath>
#include <cstddef>

#include "cvples/error.hpp"

namespace cvples {

/// Uniform triply-periodic Cartesian grid. Nodes sit at origin + index*spacing;
/// index arithmetic wraps modulo n along every axis.
///
/// Storage convention used by every field in the library: x fastest,
/// flat index = i + nx*(j + ny*k).
struct Grid {
  int nx = 0, ny = 0, nz = 0;
  double lx = 0, ly = 0, lz = 0;
  double x0 = 0, y0 = 0, z0 = 0;
  double dx = 0, dy = 0, dz = 0;

  Grid() = default;

  Grid(int nx_, int ny_, int nz_, double lx_, double ly_, double lz_, double ox = 0.0,
       double oy = 0.0, double oz = 0.0)
      : nx(nx_), ny(ny_), nz(nz_), lx(lx_), ly(ly_), lz(lz_), x0(ox), y0(oy), z0(oz) {
    if (nx < 8 || ny < 8 || nz < 8)
      fail(errc::axis_too_small, "grid needs at least 8 points per axis");
    if (!(lx > 0.0) || !(ly > 0.0) || !(lz > 0.0))
      fail(errc::invalid_argument, "grid extents must be positive");
    dx = lx / nx;
    dy = ly / ny;
    dz = lz / nz;
  }

  std::size_t size() const { return std::size_t(nx) * std::size_t(ny) * std::size_t(nz); }

  std::size_t idx(int i, int j, int k) const {
    return std::size_t(i) + std::size_t(nx) * (std::size_t(j) + std::size_t(ny) * std::size_t(k));
  }

  int n(int axis) const { return axis == 0 ? nx : (axis == 1 ? ny : nz); }
  double spacing(int axis) const { return axis == 0 ? dx : (axis == 1 ? dy : dz); }
  double extent(int axis) const { return axis == 0 ? lx : (axis == 1 ? ly : lz); }

  double x(int i) const { return x0 + i * dx; }
  double y(int j) const { return y0 + j * dy; }
  double z(int k) const { return z0 + k * dz; }

  static int wrap(int i, int n) {
    i %= n;
    return i < 0 ? i + n : i;
  }

  bool same_shape(const Grid& o) const { return nx == o.nx && ny == o.ny && nz == o.nz; }
  bool cubic() const { return nx == ny && ny == nz; }
  bool isotropic() const {
    const double d = std::fmax(dx, std::fmax(dy, dz));
    return std::fabs(dx - dy) <= 1e-12 * d && std::fabs(dx - dz) <= 1e-12 * d;
  }

  /// Geometric-mean cell size (dx dy dz)^(1/3).
  double delta_bar() const { return std::cbrt(dx * dy * dz); }
};

}  // namespace cvples
