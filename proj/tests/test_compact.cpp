#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "cvples/compact.hpp"
#include "cvples/error.hpp"
#include "cvples/reduce.hpp"
#include "test_util.hpp"

using namespace cvples;
using namespace cvples::testing;

namespace {

double ddx_max_error_single_mode(int n, int axis) {
  const Grid g = unit_box(n);
  Derivatives der(g);
  ScalarField f(g), exact(g);
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const double c = axis == 0 ? g.x(i) : (axis == 1 ? g.y(j) : g.z(k));
        f(i, j, k) = std::sin(c);
        exact(i, j, k) = std::cos(c);
      }
  ScalarField out = der.ddx(f, axis);
  return max_abs_diff(out, exact);
}

}  // namespace

TEST_CASE("derivative of a constant field vanishes") {
  const Grid g = unit_box(16);
  Derivatives der(g);
  ScalarField f(g, 4.2);
  for (int axis = 0; axis < 3; ++axis) {
    ScalarField out = der.ddx(f, axis);
    CHECK(max_abs(out) < 1e-13);
  }
}

TEST_CASE("single-mode derivative error below 1e-5 at n=32") {
  for (int axis = 0; axis < 3; ++axis) CHECK(ddx_max_error_single_mode(32, axis) < 1e-5);
}

TEST_CASE("measured convergence order is sixth") {
  for (int axis = 0; axis < 3; ++axis) {
    const double e16 = ddx_max_error_single_mode(16, axis);
    const double e32 = ddx_max_error_single_mode(32, axis);
    const double order = std::log2(e16 / e32);
    CHECK(order > 5.5);
    CHECK(order < 6.5);
  }
}

TEST_CASE("derivative commutes with periodic shift") {
  const Grid g = unit_box(12);
  Derivatives der(g);
  ScalarField f = band_limited_field(g, 3);
  const int sx = 5, sy = 7, sz = 2;
  ScalarField shifted(g);
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) shifted(i, j, k) = f.at_wrapped(i + sx, j + sy, k + sz);

  for (int axis = 0; axis < 3; ++axis) {
    ScalarField d_shift = der.ddx(shifted, axis);
    ScalarField d = der.ddx(f, axis);
    double err = 0.0;
    for (int k = 0; k < g.nz; ++k)
      for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
          err = std::fmax(err, std::fabs(d_shift(i, j, k) - d.at_wrapped(i + sx, j + sy, k + sz)));
    CHECK(err < 1e-12);
  }
}

TEST_CASE("integration by parts on the periodic box") {
  const Grid g = unit_box(16);
  Derivatives der(g);
  ScalarField f = band_limited_field(g, 31);
  ScalarField h = band_limited_field(g, 32);
  for (int axis = 0; axis < 3; ++axis) {
    ScalarField df = der.ddx(f, axis);
    ScalarField dh = der.ddx(h, axis);
    ScalarField prod(g);
    for (std::size_t m = 0; m < prod.size(); ++m) prod[m] = f[m] * dh[m] + h[m] * df[m];
    CHECK(std::fabs(volume_average(prod)) < 1e-10);
  }
}

TEST_CASE("gradient of constants and manufactured shear") {
  const Grid g = unit_box(32);
  Derivatives der(g);

  VectorField c(g);
  c.x().fill(1.0);
  c.y().fill(-2.0);
  c.z().fill(0.5);
  TensorField grad = der.gradient(c);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(max_abs(grad.comp(i, j)) < 1e-13);

  // u = (sin y, 0, 0): du/dy = cos y, all else zero
  VectorField u(g);
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) u.x()(i, j, k) = std::sin(g.y(j));
  grad = der.gradient(u);
  double err = 0.0;
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i)
        err = std::fmax(err, std::fabs(grad.comp(0, 1)(i, j, k) - std::cos(g.y(j))));
  CHECK(err < 1e-5);
}

TEST_CASE("vortex initial field is discretely divergence-free") {
  const Grid g = unit_box(24);
  Derivatives der(g);
  VectorField u = tgv_velocity(g);
  TensorField grad = der.gradient(u);
  double err = 0.0;
  for (std::size_t m = 0; m < g.size(); ++m)
    err = std::fmax(err,
                    std::fabs(grad.comp(0, 0)[m] + grad.comp(1, 1)[m] + grad.comp(2, 2)[m]));
  CHECK(err < 1e-10);
}

TEST_CASE("cyclic tridiagonal: identity system") {
  const int n = 16;
  CyclicTridiagonalSystem sys;
  sys.sub.assign(n, 0.0);
  sys.diag.assign(n, 1.0);
  sys.super.assign(n, 0.0);
  std::vector<double> rhs(n);
  for (int i = 0; i < n; ++i) rhs[i] = std::cos(0.3 * i);
  auto x = solve_cyclic_tridiagonal(sys, rhs);
  for (int i = 0; i < n; ++i) CHECK(x[i] == doctest::Approx(rhs[i]).epsilon(1e-14));
}

TEST_CASE("cyclic tridiagonal: hand-solved 4x4 system") {
  // A = rows [4 1 0 1; 1 4 1 0; 0 1 4 1; 1 0 1 4], x = (1, -1, 2, 0)
  CyclicTridiagonalSystem sys;
  sys.sub = {1.0, 1.0, 1.0, 1.0};
  sys.diag = {4.0, 4.0, 4.0, 4.0};
  sys.super = {1.0, 1.0, 1.0, 1.0};
  const std::vector<double> rhs = {3.0, -1.0, 7.0, 3.0};
  auto x = solve_cyclic_tridiagonal(sys, rhs);
  const double expect[4] = {1.0, -1.0, 2.0, 0.0};
  for (int i = 0; i < 4; ++i) CHECK(std::fabs(x[i] - expect[i]) < 1e-14);
}

TEST_CASE("cyclic tridiagonal: random dominant system multiply-back") {
  const int n = 64;
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> off(-1.0, 1.0);
  CyclicTridiagonalSystem sys;
  sys.sub.resize(n);
  sys.diag.resize(n);
  sys.super.resize(n);
  std::vector<double> rhs(n);
  for (int i = 0; i < n; ++i) {
    sys.sub[i] = off(rng);
    sys.super[i] = off(rng);
    sys.diag[i] = 3.0 + off(rng);  // strictly dominant
    rhs[i] = off(rng);
  }
  auto x = solve_cyclic_tridiagonal(sys, rhs);

  double res = 0.0, bnorm = 0.0;
  for (int i = 0; i < n; ++i) {
    const int im = (i + n - 1) % n, ip = (i + 1) % n;
    const double sub = sys.sub[i], sup = sys.super[i];
    const double ax = sys.diag[i] * x[i] + sub * x[im] + sup * x[ip];
    res = std::fmax(res, std::fabs(ax - rhs[i]));
    bnorm = std::fmax(bnorm, std::fabs(rhs[i]));
  }
  CHECK(res <= 1e-12 * bnorm);
}

TEST_CASE("cyclic tridiagonal rejects degenerate systems") {
  CyclicTridiagonalSystem sys;
  sys.sub = {0.0, 0.0};
  sys.diag = {1.0, 1.0};
  sys.super = {0.0, 0.0};
  std::vector<double> rhs = {1.0, 1.0};
  CHECK_THROWS_AS(solve_cyclic_tridiagonal(sys, rhs), Error);
}

TEST_CASE("prefactored constant-coefficient solver agrees with the general one") {
  const int n = 48;
  const double alpha = 1.0 / 3.0;
  CyclicConstSolver fast(n, alpha);
  CyclicTridiagonalSystem sys;
  sys.sub.assign(n, alpha);
  sys.diag.assign(n, 1.0);
  sys.super.assign(n, alpha);
  std::vector<double> rhs(n);
  for (int i = 0; i < n; ++i) rhs[i] = std::sin(0.7 * i) + 0.2 * std::cos(2.1 * i);
  auto ref = solve_cyclic_tridiagonal(sys, rhs);
  std::vector<double> x = rhs;
  fast.solve_inplace(x.data());
  for (int i = 0; i < n; ++i) CHECK(x[i] == doctest::Approx(ref[i]).epsilon(1e-12));
}

TEST_CASE("solution filter: constants, Nyquist and smooth modes") {
  const Grid g = unit_box(64);

  ScalarField c(g, 2.0);
  ScalarField fc = solution_filter(c, 0.49);
  double err = 0.0;
  for (std::size_t m = 0; m < fc.size(); ++m) err = std::fmax(err, std::fabs(fc[m] - 2.0));
  CHECK(err < 1e-13);

  ScalarField nyq(g);
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) nyq(i, j, k) = ((i + j + k) % 2 == 0) ? 1.0 : -1.0;
  ScalarField fn = solution_filter(nyq, 0.3);
  CHECK(max_abs(fn) < 1e-12);

  // smooth single mode: amplitude loss below 1e-6 at alpha = 0.49
  ScalarField s(g);
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) s(i, j, k) = std::sin(g.x(i));
  ScalarField fs = solution_filter(s, 0.49);
  CHECK(max_abs_diff(fs, s) < 1e-6);
}

TEST_CASE("solution filter transfer function endpoints") {
  CHECK(SolutionFilter::transfer_gain(0.49, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::fabs(SolutionFilter::transfer_gain(0.49, M_PI)) < 1e-14);
  CHECK(std::fabs(SolutionFilter::transfer_gain(0.3, M_PI)) < 1e-14);
}

TEST_CASE("solution filter is symmetric under field reversal") {
  const Grid g = unit_box(16);
  ScalarField f = band_limited_field(g, 77);
  ScalarField rev(g);
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i)
        rev(i, j, k) = f((g.nx - i) % g.nx, (g.ny - j) % g.ny, (g.nz - k) % g.nz);

  ScalarField ff = solution_filter(f, 0.4);
  ScalarField frev = solution_filter(rev, 0.4);
  double err = 0.0;
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i)
        err = std::fmax(err,
                        std::fabs(frev(i, j, k) -
                                  ff((g.nx - i) % g.nx, (g.ny - j) % g.ny, (g.nz - k) % g.nz)));
  CHECK(err < 1e-13);
}

TEST_CASE("solution filter rejects out-of-range strength") {
  const Grid g = unit_box(8);
  ScalarField f(g, 1.0);
  CHECK_THROWS_AS(solution_filter(f, 0.25), Error);
  CHECK_THROWS_AS(solution_filter(f, 0.5), Error);
  CHECK_THROWS_AS(solution_filter(f, -0.1), Error);
}
