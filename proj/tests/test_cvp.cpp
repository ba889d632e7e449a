#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cvples/cvp.hpp"
#include "cvples/error.hpp"
#include "cvples/reduce.hpp"
#include "test_util.hpp"

using namespace cvples;
using namespace cvples::testing;

TEST_CASE("enstrophy: uniform flow, hand curl, vortex mean") {
  const Grid g = unit_box(32);
  Derivatives der(g);

  VectorField uni(g);
  uni.x().fill(2.0);
  CHECK(max_abs(enstrophy(der, uni)) < 1e-13);

  // u = (0, 0, sin x): omega = (0, -cos x, 0), xi = cos^2(x)/2
  VectorField u(g);
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) u.z()(i, j, k) = std::sin(g.x(i));
  ScalarField xi = enstrophy(der, u);
  double err = 0.0;
  for (int i = 0; i < g.nx; ++i) {
    const double c = std::cos(g.x(i));
    err = std::fmax(err, std::fabs(xi(i, 4, 9) - 0.5 * c * c));
  }
  CHECK(err < 1e-5);

  // analytic volume mean of the vortex initial enstrophy is 3/8
  ScalarField xit = enstrophy(der, tgv_velocity(g));
  CHECK(volume_average(xit) == doctest::Approx(3.0 / 8.0).epsilon(1e-6));
}

TEST_CASE("sigma: constant enstrophy gives 1, Nyquist gives 0 under expl4") {
  const Grid g = unit_box(16);
  TestFilter filt(g, TestFilterSpec::expl4());

  ScalarField xi(g, 2.0);
  ScalarField sigma(g);
  sigma_field(xi, filt, AxisSet::all(), 1e-12, sigma);
  CHECK(max_abs_diff(sigma, ScalarField(g, 1.0)) < 1e-12);

  // enstrophy rich at the x-Nyquist on a positive pedestal: filtered value is
  // the pedestal alone, so sigma = 1/(1 + (-1)^i * a) at each node
  ScalarField nyq(g);
  const double ped = 1.0, amp = 0.5;
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) nyq(i, j, k) = ped + amp * (i % 2 == 0 ? 1.0 : -1.0);
  sigma_field(nyq, filt, AxisSet::parse("x"), 1e-12, sigma);
  double err = 0.0;
  for (int i = 0; i < g.nx; ++i)
    err = std::fmax(err, std::fabs(sigma(i, 2, 3) - ped / nyq(i, 2, 3)));
  CHECK(err < 1e-12);
}

TEST_CASE("sigma: exact single-mode ratio at the half-gain mode") {
  const Grid g = unit_box(16);
  TestFilter filt(g, TestFilterSpec::expl4());
  // mode 4 on n=16 has k delta = pi/2 where expl4 gains exactly 1/2
  const double ped = 2.0, amp = 0.7;
  ScalarField xi(g), sigma(g);
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i)
        xi(i, j, k) = ped + amp * std::cos(2.0 * M_PI * 4 * i / g.nx);
  sigma_field(xi, filt, AxisSet::parse("x"), 1e-12, sigma);
  double err = 0.0;
  for (int i = 0; i < g.nx; ++i) {
    const double c = amp * std::cos(2.0 * M_PI * 4 * i / g.nx);
    err = std::fmax(err, std::fabs(sigma(i, 5, 6) - (ped + 0.5 * c) / (ped + c)));
  }
  CHECK(err < 1e-12);
}

TEST_CASE("sigma floor: vanishing enstrophy reports 1 (sensor off)") {
  const Grid g = unit_box(16);
  TestFilter filt(g, TestFilterSpec::gauss());
  ScalarField xi(g, 0.0), sigma(g);
  sigma_field(xi, filt, AxisSet::all(), 1e-12, sigma);
  CHECK(max_abs_diff(sigma, ScalarField(g, 1.0)) == 0.0);
}

TEST_CASE("sharp-filter threshold closed form") {
  CHECK(sigma_eq_sharp(1.0) == doctest::Approx(1.0));
  CHECK(sigma_eq_sharp(2.0) == doctest::Approx(std::pow(2.0, -4.0 / 3.0)).epsilon(1e-14));
  CHECK(sigma_eq_sharp(2.0) == doctest::Approx(0.39685).epsilon(1e-4));
  CHECK_THROWS_AS(sigma_eq_sharp(0.9), Error);
}

TEST_CASE("sharp quadrature cross-checks the closed form") {
  for (double r : {1.5, 2.0, 3.0})
    CHECK(std::fabs(sigma_eq_quadrature_sharp(r, InterpolantMode::identity) -
                    sigma_eq_sharp(r)) < 1e-6);
}

TEST_CASE("quadrature reproduces the published thresholds with the interpolant") {
  CHECK(std::fabs(sigma_eq_quadrature(TestFilterSpec::gauss(), InterpolantMode::int6) - 0.34) <
        0.02);
  CHECK(std::fabs(sigma_eq_quadrature(TestFilterSpec::expl4(), InterpolantMode::int6) - 0.54) <
        0.02);
  CHECK(std::fabs(sigma_eq_quadrature(TestFilterSpec::impl6(-0.4), InterpolantMode::int6) - 0.71) <
        0.02);
}

TEST_CASE("threshold decreases with filter strength") {
  for (InterpolantMode mode : {InterpolantMode::identity, InterpolantMode::int6}) {
    const double sg = sigma_eq_quadrature(TestFilterSpec::gauss(), mode);
    const double se = sigma_eq_quadrature(TestFilterSpec::expl4(), mode);
    const double si = sigma_eq_quadrature(TestFilterSpec::impl6(-0.4), mode);
    CHECK(sg < se);
    CHECK(se < si);
  }
}

TEST_CASE("sensor function: joints, midpoint, monotonicity, continuity") {
  const double seq = 0.54;
  CHECK(sensor_f_scalar(1.0, seq) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(sensor_f_scalar(seq, seq) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sensor_f_scalar(0.5 * (1.0 + seq), seq) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(sensor_f_scalar(0.1, seq) == 1.0);
  CHECK(sensor_f_scalar(1.5, seq) == 0.0);

  double prev = 2.0;
  for (int s = 0; s <= 10000; ++s) {
    const double f = sensor_f_scalar(2.0 * s / 10000.0, seq);
    CHECK(f <= prev + 1e-15);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
    prev = f;
  }

  const double delta = 1e-8;
  CHECK(std::fabs(sensor_f_scalar(seq + delta, seq) - 1.0) < 1e-6);
  CHECK(std::fabs(sensor_f_scalar(1.0 - delta, seq)) < 1e-6);
}

TEST_CASE("sensor field validates sigma_eq") {
  const Grid g = unit_box(8);
  ScalarField sigma(g, 0.5), out(g);
  CHECK_THROWS_AS(sensor_f(sigma, 0.0, out), Error);
  CHECK_THROWS_AS(sensor_f(sigma, 1.0, out), Error);
}

TEST_CASE("viscosity correction: off, through, never amplifies") {
  const Grid g = unit_box(12);
  ScalarField mut = random_field(g, 8, 0.0, 2.0);

  ScalarField off(g, 0.0), on(g, 1.0);
  CHECK(max_abs(apply_cvp(mut, off)) == 0.0);
  CHECK(max_abs_diff(apply_cvp(mut, on), mut) == 0.0);

  ScalarField f = random_field(g, 9, 0.0, 1.0);
  ScalarField cut = apply_cvp(mut, f);
  for (std::size_t m = 0; m < cut.size(); ++m) {
    CHECK(cut[m] >= 0.0);
    CHECK(cut[m] <= mut[m]);
  }
}

TEST_CASE("deactivation: a single low mode drives sigma to 1 and f to 0") {
  const Grid g = unit_box(32);
  Derivatives der(g);
  TestFilter filt(g, TestFilterSpec::expl4());
  // velocity with no content above the test-filter cutoff
  VectorField u(g);
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) u.z()(i, j, k) = std::sin(g.x(i));
  ScalarField xi = enstrophy(der, u);
  ScalarField sigma(g), f(g);
  sigma_field(xi, filt, AxisSet::all(), 1e-12, sigma);
  CHECK(volume_average(sigma) >= 0.95);
  sensor_f(sigma, 0.54, f);
  CHECK(volume_average(f) <= 0.05);
}

TEST_CASE("config resolves sigma_eq") {
  CvpConfig cfg;
  cfg.filter = TestFilterSpec::expl4();
  cfg.interpolant = InterpolantMode::int6;
  CHECK(cfg.resolve_sigma_eq() == doctest::Approx(0.5368).epsilon(1e-3));
  cfg.sigma_eq = 0.7;
  CHECK(cfg.resolve_sigma_eq() == 0.7);
  cfg.sigma_eq = 1.4;
  CHECK_THROWS_AS(cfg.resolve_sigma_eq(), Error);
}

TEST_CASE("vorticity: hand curl") {
  const Grid g = unit_box(32);
  Derivatives der(g);
  VectorField u(g);
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) u.z()(i, j, k) = std::sin(g.x(i));
  VectorField omega(g);
  vorticity(der, u, omega);
  double err = 0.0;
  for (int i = 0; i < g.nx; ++i) {
    err = std::fmax(err, std::fabs(omega.y()(i, 2, 5) + std::cos(g.x(i))));
    err = std::fmax(err, std::fabs(omega.x()(i, 2, 5)));
    err = std::fmax(err, std::fabs(omega.z()(i, 2, 5)));
  }
  CHECK(err < 1e-5);
}

TEST_CASE("vorticity-form sigma: uniform rotation, single mode, floor, Nyquist") {
  const Grid g = unit_box(16);
  TestFilter filt(g, TestFilterSpec::expl4());
  ScalarField xi(g), sigma(g);

  // spatially constant vorticity vector: filtered field is itself, sigma = 1
  VectorField omega(g);
  omega.x().fill(0.3);
  omega.y().fill(-1.2);
  omega.z().fill(0.5);
  for (std::size_t m = 0; m < g.size(); ++m)
    xi[m] = 0.5 * (0.3 * 0.3 + 1.2 * 1.2 + 0.5 * 0.5);
  sigma_field_vorticity(omega, xi, filt, AxisSet::all(), 1e-12, sigma);
  CHECK(max_abs_diff(sigma, ScalarField(g, 1.0)) < 1e-12);

  // pedestal plus the exactly-halved mode on one component
  const double ped = 2.0, amp = 0.7;
  VectorField om2(g);
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i)
        om2.z()(i, j, k) = ped + amp * std::sin(2.0 * M_PI * 4 * i / g.nx);
  for (std::size_t m = 0; m < g.size(); ++m) xi[m] = 0.5 * om2.z()[m] * om2.z()[m];
  sigma_field_vorticity(om2, xi, filt, AxisSet::parse("x"), 1e-12, sigma);
  double err = 0.0;
  for (int i = 0; i < g.nx; ++i) {
    const double c = amp * std::sin(2.0 * M_PI * 4 * i / g.nx);
    err = std::fmax(err, std::fabs(sigma(i, 3, 9) - (ped + 0.5 * c) / (ped + c)));
  }
  CHECK(err < 1e-12);

  // below the floor the sensor reports quiescence
  VectorField zero(g);
  ScalarField xz(g, 0.0);
  sigma_field_vorticity(zero, xz, filt, AxisSet::all(), 1e-12, sigma);
  CHECK(max_abs_diff(sigma, ScalarField(g, 1.0)) == 0.0);

  // pure Nyquist vorticity is annihilated by the filter: sigma = 0, f = 1
  VectorField nyq(g);
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) nyq.z()(i, j, k) = (i % 2 == 0) ? 1.0 : -1.0;
  for (std::size_t m = 0; m < g.size(); ++m) xi[m] = 0.5;
  sigma_field_vorticity(nyq, xi, filt, AxisSet::parse("x"), 1e-12, sigma);
  CHECK(max_abs(sigma) < 1e-12);
}

TEST_CASE("vorticity-form deactivation on a single low mode") {
  const Grid g = unit_box(32);
  Derivatives der(g);
  TestFilter filt(g, TestFilterSpec::gauss());
  VectorField u(g);
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) u.z()(i, j, k) = std::sin(g.x(i));
  VectorField omega(g);
  vorticity(der, u, omega);
  ScalarField xi = enstrophy(der, u);
  ScalarField sigma(g), f(g);
  sigma_field_vorticity(omega, xi, filt, AxisSet::all(), 1e-12, sigma);
  CHECK(volume_average(sigma) >= 0.95);
  sensor_f(sigma, 0.34, f);
  CHECK(volume_average(f) <= 0.05);
}
