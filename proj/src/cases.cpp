#include "cvples/cases.hpp"

#include <cmath>
#include <random>

#include "cvples/cvp.hpp"
#include "cvples/error.hpp"
#include "cvples/reduce.hpp"

namespace cvples {

void TgvParams::validate() const {
  if (!(re > 0.0)) fail(errc::bad_value, "re must be positive");
  if (!(mach > 0.0 && mach <= 0.3))
    fail(errc::bad_value, "mach must lie in (0, 0.3] for the low-Mach setup");
  if (!(length > 0.0 && v0 > 0.0 && rho0 > 0.0))
    fail(errc::bad_value, "tgv reference scales must be positive");
}

Grid tgv_grid(int nx, int ny, int nz, double length) {
  const double l = 2.0 * M_PI * length;
  return Grid(nx, ny, nz, l, l, l, -M_PI * length, -M_PI * length, -M_PI * length);
}

ThermoParams tgv_thermo(const TgvParams& prm, double gamma) {
  ThermoParams t;
  t.gamma = gamma;
  t.mu = prm.rho0 * prm.v0 * prm.length / prm.re;
  t.cp = gamma / (gamma - 1.0);  // gas constant 1
  return t;
}

ConservedState init_tgv(const Grid& g, const TgvParams& prm, const ThermoParams& thermo) {
  prm.validate();
  const double span = 2.0 * M_PI * prm.length;
  const double tol = 1e-10 * span;
  if (std::fabs(g.lx - span) > tol || std::fabs(g.ly - span) > tol ||
      std::fabs(g.lz - span) > tol || std::fabs(g.x0 + M_PI * prm.length) > tol ||
      std::fabs(g.y0 + M_PI * prm.length) > tol || std::fabs(g.z0 + M_PI * prm.length) > tol)
    fail(errc::domain_mismatch, "tgv grid must span [-pi L, pi L]^3");

  const double v0 = prm.v0, il = 1.0 / prm.length;
  const double p0 = prm.p0(thermo.gamma);
  const double pamp = prm.rho0 * v0 * v0 / 16.0;

  ScalarField rho(g, prm.rho0), p(g);
  VectorField vel(g);
#pragma omp parallel for schedule(static)
  for (int k = 0; k < g.nz; ++k) {
    const double zc = g.z(k) * il;
    for (int j = 0; j < g.ny; ++j) {
      const double yc = g.y(j) * il;
      for (int i = 0; i < g.nx; ++i) {
        const double xc = g.x(i) * il;
        const std::size_t m = g.idx(i, j, k);
        vel.x()[m] = v0 * std::sin(xc) * std::cos(yc) * std::cos(zc);
        vel.y()[m] = -v0 * std::cos(xc) * std::sin(yc) * std::cos(zc);
        vel.z()[m] = 0.0;
        p[m] = p0 + pamp * (std::cos(2.0 * xc) + std::cos(2.0 * yc)) * (std::cos(2.0 * zc) + 2.0);
      }
    }
  }
  return conserved_encode(rho, vel, p, thermo);
}

void HelixParams::validate() const {
  if (n_turns < 1) fail(errc::bad_value, "n_turns must be a positive integer");
  if (!(core_ratio > 0.0 && core_ratio < 1.0)) fail(errc::bad_value, "need 0 < r_c < R");
  if (kernel_n < 0) fail(errc::bad_value, "kernel_n must be >= 1 (0 selects the Rankine limit)");
  if (!(radius > 0.0 && pitch_ratio > 0.0 && box_lx > 0.0))
    fail(errc::bad_value, "helix geometry parameters must be positive");
  if (!(re_gamma > 0.0) || !(circulation > 0.0) || !(rho0 > 0.0))
    fail(errc::bad_value, "helix flow parameters must be positive");
  if (!(mach_peak > 0.0 && mach_peak <= 0.3))
    fail(errc::bad_value, "mach_peak must lie in (0, 0.3]");
  if (n_filaments < 1 || n_filaments > 2) fail(errc::bad_value, "n_filaments must be 1 or 2");
  if (image_layers < 0) fail(errc::bad_value, "image_layers must be >= 0");
  if (theta_per_turn < 16) fail(errc::bad_value, "theta_per_turn too small");
}

Grid helix_grid(int nx, int ny, int nz, const HelixParams& prm) {
  return Grid(nx, ny, nz, prm.box_lx, prm.ly(), prm.box_lx);
}

BiotSavartFilaments::BiotSavartFilaments(const HelixParams& prm, int theta_per_turn,
                                         int image_layers) {
  radius_ = prm.radius;
  ell_ = prm.pitch() / (2.0 * M_PI);
  const double rc = prm.core_radius();
  rc2_ = rc * rc;
  circulation_ = prm.circulation;
  kernel_n_ = prm.kernel_n;
  build(prm.n_filaments, prm.n_turns, theta_per_turn, image_layers);
}

BiotSavartFilaments BiotSavartFilaments::straight_filament(double circulation, double core_radius,
                                                           int kernel_n, double ly,
                                                           int samples_per_span,
                                                           int image_layers) {
  BiotSavartFilaments bs;
  bs.radius_ = 0.0;
  bs.ell_ = ly / (2.0 * M_PI);  // one "turn" spans the whole period
  bs.rc2_ = core_radius * core_radius;
  bs.circulation_ = circulation;
  bs.kernel_n_ = kernel_n;
  bs.build(1, 1, samples_per_span, image_layers);
  return bs;
}

void BiotSavartFilaments::build(int n_filaments, int n_turns, int theta_per_turn,
                                int image_layers) {
  const double span = n_turns * 2.0 * M_PI;
  for (int f = 0; f < n_filaments; ++f) {
    const double phase = f * M_PI;
    // central box plus nearest image on each side at full resolution
    add_filament(phase, -span, 3.0 * span, 3 * n_turns * theta_per_turn, near_);
    // remaining image layers at reduced resolution; the integrand seen from
    // the box varies on the scale of a full turn out there
    const int coarse = std::max(32, theta_per_turn / 8);
    for (int layer = 2; layer <= image_layers; ++layer) {
      add_filament(phase, -double(layer) * span, span, n_turns * coarse, far_);
      add_filament(phase, double(layer) * span, span, n_turns * coarse, far_);
    }
  }
}

void BiotSavartFilaments::add_filament(double phase, double theta0, double theta_span,
                                       int samples, Samples& dst) {
  const double r = radius_;
  const double dtheta = theta_span / samples;
  for (int s = 0; s <= samples; ++s) {
    const double theta = theta0 + s * dtheta;
    const double c = std::cos(theta + phase), sn = std::sin(theta + phase);
    dst.px.push_back(r * c);
    dst.py.push_back(ell_ * theta);
    dst.pz.push_back(r * sn);
    dst.tx.push_back(-r * sn);
    dst.ty.push_back(ell_);
    dst.tz.push_back(r * c);
    // composite trapezoid: half weights at the segment ends
    dst.w.push_back((s == 0 || s == samples) ? 0.5 * dtheta : dtheta);
  }
}

namespace {

// 1 / (q^n + rc^(2n))^(3/(2n)) in terms of q = |dx|^2, computed through the
// bounded ratio min/max so large exponents neither overflow nor underflow.
inline double kernel_weight(double q, double rc2, int n) {
  const double m2 = std::fmax(q, rc2);
  const double base = m2 * std::sqrt(m2);  // m2^(3/2)
  if (n == 0) return 1.0 / base;           // Rankine limit
  const double s2 = std::fmin(q, rc2) / m2;
  double corr;
  if (n == 4) {
    double t = s2 * s2;
    t = t * t;
    const double c8 = std::sqrt(std::sqrt(std::sqrt(1.0 + t)));
    corr = c8 * c8 * c8;
  } else {
    corr = std::pow(1.0 + std::pow(s2, n), 1.5 / n);
  }
  return 1.0 / (base * corr);
}

}  // namespace

void BiotSavartFilaments::velocity(double x, double y, double z, double out[3]) const {
  double ux = 0.0, uy = 0.0, uz = 0.0;
  const int n = kernel_n_;
  for (const Samples* set : {&near_, &far_}) {
    const std::size_t count = set->px.size();
    const double* px = set->px.data();
    const double* py = set->py.data();
    const double* pz = set->pz.data();
    const double* tx = set->tx.data();
    const double* ty = set->ty.data();
    const double* tz = set->tz.data();
    const double* w = set->w.data();
    if (n == 4) {
      for (std::size_t s = 0; s < count; ++s) {
        const double rx = x - px[s], ry = y - py[s], rz = z - pz[s];
        const double q = rx * rx + ry * ry + rz * rz;
        const double m2 = std::fmax(q, rc2_);
        double t = std::fmin(q, rc2_) / m2;
        t = t * t;
        t = t * t;
        const double c8 = std::sqrt(std::sqrt(std::sqrt(1.0 + t)));
        const double wk = w[s] / (m2 * std::sqrt(m2) * c8 * c8 * c8);
        ux += wk * (ry * tz[s] - rz * ty[s]);
        uy += wk * (rz * tx[s] - rx * tz[s]);
        uz += wk * (rx * ty[s] - ry * tx[s]);
      }
    } else {
      for (std::size_t s = 0; s < count; ++s) {
        const double rx = x - px[s], ry = y - py[s], rz = z - pz[s];
        const double q = rx * rx + ry * ry + rz * rz;
        const double wk = w[s] * kernel_weight(q, rc2_, n);
        ux += wk * (ry * tz[s] - rz * ty[s]);
        uy += wk * (rz * tx[s] - rx * tz[s]);
        uz += wk * (rx * ty[s] - ry * tx[s]);
      }
    }
  }
  const double pref = -circulation_ / (4.0 * M_PI);
  out[0] = pref * ux;
  out[1] = pref * uy;
  out[2] = pref * uz;
}

double BiotSavartFilaments::speed(double x, double y, double z) const {
  double u[3];
  velocity(x, y, z, u);
  return std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
}

void BiotSavartFilaments::evaluate(const Grid& g, VectorField& out) const {
  const double cx = g.x0 + 0.5 * g.lx;
  const double cz = g.z0 + 0.5 * g.lz;
#pragma omp parallel for schedule(dynamic, 1)
  for (int k = 0; k < g.nz; ++k) {
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        double u[3];
        velocity(g.x(i) - cx, g.y(j), g.z(k) - cz, u);
        const std::size_t m = g.idx(i, j, k);
        out.x()[m] = u[0];
        out.y()[m] = u[1];
        out.z()[m] = u[2];
      }
  }
}

HelixInit init_helix(const Grid& g, const HelixParams& prm, double gamma, std::uint64_t seed) {
  prm.validate();
  if (std::fabs(g.ly - prm.ly()) > 1e-10 * prm.ly())
    fail(errc::domain_mismatch, "grid ly must equal n_turns * pitch");

  BiotSavartFilaments bs(prm, prm.theta_per_turn, prm.image_layers);
  VectorField vel(g);
  bs.evaluate(g, vel);

  // peak speed and its node
  double peak = 0.0;
  std::size_t arg = 0;
  for (std::size_t m = 0; m < g.size(); ++m) {
    const double s2 = vel.x()[m] * vel.x()[m] + vel.y()[m] * vel.y()[m] + vel.z()[m] * vel.z()[m];
    if (s2 > peak) {
      peak = s2;
      arg = m;
    }
  }
  peak = std::sqrt(peak);
  if (!(peak > 0.0)) fail(errc::invalid_argument, "helix init produced a quiescent field");

  // quadrature convergence guards at the peak node
  {
    const int ai = int(arg % g.nx);
    const int aj = int((arg / g.nx) % g.ny);
    const int ak = int(arg / (std::size_t(g.nx) * g.ny));
    const double cx = g.x0 + 0.5 * g.lx, cz = g.z0 + 0.5 * g.lz;
    const double px = g.x(ai) - cx, py = g.y(aj), pz = g.z(ak) - cz;

    BiotSavartFilaments fine_theta(prm, 2 * prm.theta_per_turn, prm.image_layers);
    if (std::fabs(fine_theta.speed(px, py, pz) - peak) > 1e-3 * peak)
      fail(errc::quadrature_not_converged,
           "doubling theta samples changes the peak speed by more than 0.1%");
    BiotSavartFilaments more_layers(prm, prm.theta_per_turn, 2 * prm.image_layers);
    if (std::fabs(more_layers.speed(px, py, pz) - peak) > 1e-3 * peak)
      fail(errc::quadrature_not_converged,
           "doubling image layers changes the peak speed by more than 0.1%");
  }

  if (prm.perturb_amp > 0.0) {
    std::mt19937_64 rng(seed);
    const double amp = prm.perturb_amp * peak;
    const double norm = 2.0 / 18446744073709551616.0;  // 2^64
    for (int c = 0; c < 3; ++c) {
      double* p = vel.comp(c).data();
      for (std::size_t m = 0; m < g.size(); ++m)
        p[m] += amp * (double(rng()) * norm - 1.0);  // uniform in [-1, 1)
    }
  }

  ThermoParams thermo;
  thermo.gamma = gamma;
  thermo.cp = gamma / (gamma - 1.0);
  thermo.mu = prm.rho0 * prm.circulation / prm.re_gamma;

  const double c0 = peak / prm.mach_peak;
  const double p0 = prm.rho0 * c0 * c0 / gamma;
  ScalarField rho(g, prm.rho0), p(g, p0);

  HelixInit out{conserved_encode(rho, vel, p, thermo), thermo, peak};
  return out;
}

double kinetic_energy(const ConservedState& state) {
  const Grid& g = state.grid();
  const double* rho = state.rho.data();
  const double* mx = state.mom.x().data();
  const double* my = state.mom.y().data();
  const double* mz = state.mom.z().data();
  const double sum = det_sum(g, [&](int i, int j, int k) {
    const std::size_t m = g.idx(i, j, k);
    const double ir = 1.0 / rho[m];
    const double u = mx[m] * ir, v = my[m] * ir, w = mz[m] * ir;
    return u * u + v * v + w * w;
  });
  return 0.5 * sum / double(g.size());
}

std::vector<double> dissipation_series(const std::vector<double>& t,
                                       const std::vector<double>& e) {
  const std::size_t n = t.size();
  if (n != e.size()) fail(errc::invalid_argument, "time and energy series differ in length");
  if (n < 3) fail(errc::too_few_samples, "dissipation series needs at least 3 samples");
  std::vector<double> eps(n);
  eps[0] = (e[1] - e[0]) / (t[1] - t[0]);
  for (std::size_t i = 1; i + 1 < n; ++i) eps[i] = (e[i + 1] - e[i - 1]) / (t[i + 1] - t[i - 1]);
  eps[n - 1] = (e[n - 1] - e[n - 2]) / (t[n - 1] - t[n - 2]);
  return eps;
}

double sgs_dissipation(const ScalarField& mut, const StrainRate& strain) {
  const Grid& g = mut.grid();
  const double* m = mut.data();
  const double* mag = strain.mag.data();
  const double sum = det_sum(g, [&](int i, int j, int k) {
    const std::size_t q = g.idx(i, j, k);
    return m[q] * mag[q] * mag[q];
  });
  return sum / double(g.size());
}

namespace {

// Parabolic sub-cell offset from three samples around a maximum, in cells.
double parabolic_offset(double fm, double f0, double fp) {
  const double denom = fm - 2.0 * f0 + fp;
  if (!(denom < 0.0)) return 0.0;
  double d = 0.5 * (fm - fp) / denom;
  if (d > 0.5) d = 0.5;
  if (d < -0.5) d = -0.5;
  return d;
}

}  // namespace

double vortex_deviation(const Derivatives& der, const ConservedState& state,
                        const HelixParams& prm) {
  const Grid& g = state.grid();
  VectorField u(g);
  for (int c = 0; c < 3; ++c) {
    const double* mom = state.mom.comp(c).data();
    const double* rho = state.rho.data();
    double* uc = u.comp(c).data();
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t m = 0; m < std::ptrdiff_t(g.size()); ++m) uc[m] = mom[m] / rho[m];
  }
  ScalarField xi = enstrophy(der, u);

  const double cx = g.x0 + 0.5 * g.lx;
  const double cz = g.z0 + 0.5 * g.lz;

  std::vector<double> dev(g.ny);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < g.ny; ++j) {
    int bi = 0, bk = 0;
    double best = -1.0;
    for (int k = 0; k < g.nz; ++k)
      for (int i = 0; i < g.nx; ++i) {
        const double v = xi(i, j, k);
        if (v > best) {
          best = v;
          bi = i;
          bk = k;
        }
      }
    const double di = parabolic_offset(xi.at_wrapped(bi - 1, j, bk), best,
                                       xi.at_wrapped(bi + 1, j, bk));
    const double dk = parabolic_offset(xi.at_wrapped(bi, j, bk - 1), best,
                                       xi.at_wrapped(bi, j, bk + 1));
    const double x = g.x(bi) + di * g.dx - cx;
    const double z = g.z(bk) + dk * g.dz - cz;
    dev[j] = std::fabs(std::hypot(x, z) - prm.radius);
  }
  return pairwise_sum(dev) / double(g.ny);
}

GrowthFit growth_rate_fit(const std::vector<double>& t, const std::vector<double>& d,
                          double t_begin, double t_end) {
  if (t.size() != d.size()) fail(errc::invalid_argument, "series lengths differ");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_begin || t[i] > t_end) continue;
    if (!(d[i] > 0.0)) continue;
    xs.push_back(t[i]);
    ys.push_back(std::log(d[i]));
  }
  const std::size_t n = xs.size();
  if (n < 4) fail(errc::degenerate_fit, "growth-rate window holds fewer than 4 usable samples");

  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
    syy += ys[i] * ys[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom <= 0.0) fail(errc::degenerate_fit, "growth-rate window has no time spread");
  GrowthFit fit;
  fit.rate = (n * sxy - sx * sy) / denom;
  const double ss_tot = syy - sy * sy / n;
  const double ss_res = ss_tot - fit.rate * (sxy - sx * sy / n);
  fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  fit.reliable = fit.r2 >= 0.5;
  return fit;
}

}  // namespace cvples
