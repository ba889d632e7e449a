#include "cvples/cvp.hpp"

#include <cmath>

#include "cvples/error.hpp"

namespace cvples {

double CvpConfig::resolve_sigma_eq() const {
  if (sigma_eq > 0.0) {
    if (sigma_eq >= 1.0) fail(errc::invalid_argument, "sigma_eq must lie in (0, 1)");
    return sigma_eq;
  }
  return sigma_eq_quadrature(filter, interpolant);
}

void vorticity(const Derivatives& der, const VectorField& u, VectorField& out) {
  const Grid& g = der.grid();
  ScalarField da(g), db(g);
  // omega_x = dw/dy - dv/dz, omega_y = du/dz - dw/dx, omega_z = dv/dx - du/dy
  const int ca[3] = {2, 0, 1}, aa[3] = {1, 2, 0};
  const int cb[3] = {1, 2, 0}, ab[3] = {2, 0, 1};
  for (int c = 0; c < 3; ++c) {
    der.ddx(u.comp(ca[c]), aa[c], da);
    der.ddx(u.comp(cb[c]), ab[c], db);
    double* o = out.comp(c).data();
    const double* pa = da.data();
    const double* pb = db.data();
    const std::size_t n = g.size();
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t m = 0; m < std::ptrdiff_t(n); ++m) o[m] = pa[m] - pb[m];
  }
}

void enstrophy(const Derivatives& der, const VectorField& u, ScalarField& out) {
  const Grid& g = der.grid();
  VectorField omega(g);
  vorticity(der, u, omega);
  const double* wx = omega.x().data();
  const double* wy = omega.y().data();
  const double* wz = omega.z().data();
  double* o = out.data();
  const std::size_t n = g.size();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t m = 0; m < std::ptrdiff_t(n); ++m)
    o[m] = 0.5 * (wx[m] * wx[m] + wy[m] * wy[m] + wz[m] * wz[m]);
}

ScalarField enstrophy(const Derivatives& der, const VectorField& u) {
  ScalarField out(der.grid());
  enstrophy(der, u, out);
  return out;
}

void sigma_field(const ScalarField& xi, const TestFilter& filter, AxisSet axes,
                 double enstrophy_floor, ScalarField& out) {
  filter.apply(xi, out, axes);
  const std::size_t n = xi.size();
  const double* x = xi.data();
  double* o = out.data();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t m = 0; m < std::ptrdiff_t(n); ++m) {
    if (x[m] < enstrophy_floor) {
      o[m] = 1.0;
    } else {
      const double filtered = o[m] > 0.0 ? o[m] : 0.0;
      o[m] = filtered / x[m];
    }
  }
}

void sigma_field_vorticity(const VectorField& omega, const ScalarField& xi,
                           const TestFilter& filter, AxisSet axes, double enstrophy_floor,
                           ScalarField& out) {
  const Grid& g = xi.grid();
  VectorField omega_h(g);
  for (int c = 0; c < 3; ++c) filter.apply(omega.comp(c), omega_h.comp(c), axes);
  const double* wx = omega.x().data();
  const double* wy = omega.y().data();
  const double* wz = omega.z().data();
  const double* hx = omega_h.x().data();
  const double* hy = omega_h.y().data();
  const double* hz = omega_h.z().data();
  const double* x = xi.data();
  double* o = out.data();
  const std::size_t n = g.size();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t m = 0; m < std::ptrdiff_t(n); ++m) {
    if (x[m] < enstrophy_floor) {
      o[m] = 1.0;
    } else {
      double num = 0.5 * (wx[m] * hx[m] + wy[m] * hy[m] + wz[m] * hz[m]);
      if (num < 0.0) num = 0.0;
      o[m] = num / x[m];
    }
  }
}

double sigma_eq_sharp(double r_delta) {
  if (!(r_delta >= 1.0)) fail(errc::domain_error, "width ratio must be >= 1");
  return std::pow(r_delta, -4.0 / 3.0);
}

namespace {

template <class F>
double simpson(F&& f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double acc = f(a) + f(b);
  for (int i = 1; i < panels; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return acc * h / 3.0;
}

/// integral of k^(1/3) F(k) over [a, b]; the substitution k = s^3 turns the
/// weight into a cubic so Simpson keeps its full order at k = 0.
template <class F>
double integrate_k13(F&& f, double a, double b, int panels) {
  const double sa = std::cbrt(a), sb = std::cbrt(b);
  return simpson(
      [&](double s) {
        const double s3 = s * s * s;
        return 3.0 * s3 * f(s3);
      },
      sa, sb, panels);
}

constexpr int kPanels = 2048;

}  // namespace

namespace {

auto interpolant_gain2(InterpolantMode mode) {
  return [mode](double k) {
    if (mode == InterpolantMode::identity) return 1.0;
    const double gi = int6_transfer_gain(k);
    return gi * gi;
  };
}

}  // namespace

double sigma_eq_quadrature(const TestFilterSpec& filter, InterpolantMode mode) {
  const auto gint2 = interpolant_gain2(mode);
  const double num = integrate_k13(
      [&](double k) { return transfer_gain(filter, k) * gint2(k); }, 0.0, M_PI, kPanels);
  const double den = integrate_k13(gint2, 0.0, M_PI, kPanels);
  return num / den;
}

double sigma_eq_quadrature_sharp(double r_delta, InterpolantMode mode) {
  if (!(r_delta >= 1.0)) fail(errc::domain_error, "width ratio must be >= 1");
  const auto gint2 = interpolant_gain2(mode);
  const double cut = M_PI / r_delta;
  const double num = integrate_k13(gint2, 0.0, cut, kPanels);
  const double den = num + (cut < M_PI ? integrate_k13(gint2, cut, M_PI, kPanels) : 0.0);
  return num / den;
}

double sensor_f_scalar(double sigma, double sigma_eq) {
  if (sigma < sigma_eq) return 1.0;
  if (sigma > 1.0) return 0.0;
  const double arg = M_PI * (sigma_eq - 2.0 * sigma + 1.0) / (2.0 * (1.0 - sigma_eq));
  return 0.5 * (1.0 + std::sin(arg));
}

void sensor_f(const ScalarField& sigma, double sigma_eq, ScalarField& out) {
  if (!(sigma_eq > 0.0 && sigma_eq < 1.0))
    fail(errc::invalid_argument, "sigma_eq must lie in (0, 1)");
  const std::size_t n = sigma.size();
  const double* s = sigma.data();
  double* o = out.data();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t m = 0; m < std::ptrdiff_t(n); ++m) o[m] = sensor_f_scalar(s[m], sigma_eq);
}

void apply_cvp(const ScalarField& mut, const ScalarField& f, ScalarField& out) {
  const std::size_t n = mut.size();
  const double* a = mut.data();
  const double* b = f.data();
  double* o = out.data();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t m = 0; m < std::ptrdiff_t(n); ++m) o[m] = a[m] * b[m];
}

ScalarField apply_cvp(const ScalarField& mut, const ScalarField& f) {
  ScalarField out(mut.grid());
  apply_cvp(mut, f, out);
  return out;
}

}  // namespace cvples
