#include "cvples/solver.hpp"

#include <cmath>

#include "cvples/error.hpp"
#include "cvples/reduce.hpp"

namespace cvples {

namespace {

void axpy_into(ScalarField& dst, const ScalarField& x) {
  double* d = dst.data();
  const double* s = x.data();
  const std::size_t n = dst.size();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t m = 0; m < std::ptrdiff_t(n); ++m) d[m] += s[m];
}

// dst = a*x + b*y
void combine2(ScalarField& dst, double a, const ScalarField& x, double b, const ScalarField& y) {
  double* d = dst.data();
  const double* px = x.data();
  const double* py = y.data();
  const std::size_t n = dst.size();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t m = 0; m < std::ptrdiff_t(n); ++m) d[m] = a * px[m] + b * py[m];
}

// dst = a*x + b*y + c*z
void combine3(ScalarField& dst, double a, const ScalarField& x, double b, const ScalarField& y,
              double c, const ScalarField& z) {
  double* d = dst.data();
  const double* px = x.data();
  const double* py = y.data();
  const double* pz = z.data();
  const std::size_t n = dst.size();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t m = 0; m < std::ptrdiff_t(n); ++m)
    d[m] = a * px[m] + b * py[m] + c * pz[m];
}

template <class F>
void for_each_field(ConservedState& s, F&& f) {
  f(s.rho);
  f(s.mom.x());
  f(s.mom.y());
  f(s.mom.z());
  f(s.rhoE);
}

void check_stage(const ConservedState& s, const ThermoParams& thermo) {
  const Grid& g = s.grid();
  const double gm1 = thermo.gamma - 1.0;
  const double* rho = s.rho.data();
  const double* mx = s.mom.x().data();
  const double* my = s.mom.y().data();
  const double* mz = s.mom.z().data();
  const double* re = s.rhoE.data();
  bool bad = false;
  const std::size_t n = g.size();
#pragma omp parallel for schedule(static) reduction(|| : bad)
  for (std::ptrdiff_t m = 0; m < std::ptrdiff_t(n); ++m) {
    const double r = rho[m];
    if (!(r > 0.0) || !std::isfinite(r) || !std::isfinite(re[m])) {
      bad = true;
      continue;
    }
    const double p = gm1 * (re[m] - 0.5 * (mx[m] * mx[m] + my[m] * my[m] + mz[m] * mz[m]) / r);
    if (!(p > 0.0) || !std::isfinite(p)) bad = true;
  }
  if (bad) fail(errc::solver_blow_up, "NaN or non-positive density/pressure after RK stage");
}

}  // namespace

void StateIncrement::zero() {
  rho.fill(0.0);
  for (int c = 0; c < 3; ++c) mom.comp(c).fill(0.0);
  rhoE.fill(0.0);
}

void StateIncrement::add(const StateIncrement& other) {
  axpy_into(rho, other.rho);
  for (int c = 0; c < 3; ++c) axpy_into(mom.comp(c), other.mom.comp(c));
  axpy_into(rhoE, other.rhoE);
}

StateIncrement RhsBudget::total() const {
  StateIncrement t = convective;
  t.add(viscous);
  t.add(sgs);
  return t;
}

RhsAssembler::RhsAssembler(const Grid& g, const ThermoParams& thermo)
    : grid_(g),
      thermo_(thermo),
      der_(g),
      prims_(g),
      grad_u_(g),
      tau_(g),
      strain_(g),
      grad_t_(g),
      work_(g),
      dwork_(g) {
  thermo.validate();
}

void RhsAssembler::decode(const ConservedState& state) { primitive_decode(state, thermo_, prims_); }

void RhsAssembler::convective(const ConservedState& state, StateIncrement& out) {
  decode(state);
  const std::size_t n = grid_.size();
  out.zero();
  for (int dir = 0; dir < 3; ++dir) {
    const double* uj = prims_.vel.comp(dir).data();
    const double* p = prims_.p.data();
    const double* rho = state.rho.data();
    const double* re = state.rhoE.data();

    // mass flux rho u_j
    double* w = work_.data();
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t m = 0; m < std::ptrdiff_t(n); ++m) w[m] = rho[m] * uj[m];
    der_.ddx(work_, dir, dwork_);
    combine2(out.rho, 1.0, out.rho, -1.0, dwork_);

    // momentum fluxes rho u_i u_j + p delta_ij
    for (int i = 0; i < 3; ++i) {
      const double* ui = prims_.vel.comp(i).data();
#pragma omp parallel for schedule(static)
      for (std::ptrdiff_t m = 0; m < std::ptrdiff_t(n); ++m) {
        double f = rho[m] * ui[m] * uj[m];
        if (i == dir) f += p[m];
        w[m] = f;
      }
      der_.ddx(work_, dir, dwork_);
      combine2(out.mom.comp(i), 1.0, out.mom.comp(i), -1.0, dwork_);
    }

    // energy flux (rho E + p) u_j
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t m = 0; m < std::ptrdiff_t(n); ++m) w[m] = (re[m] + p[m]) * uj[m];
    der_.ddx(work_, dir, dwork_);
    combine2(out.rhoE, 1.0, out.rhoE, -1.0, dwork_);
  }
}

void RhsAssembler::diffusive(double mu_const, const ScalarField* mut, double lambda_const,
                             double mut_heat_coeff, StateIncrement& out) {
  const std::size_t n = grid_.size();
  der_.gradient(prims_.vel, grad_u_);
  strain_rate(grad_u_, strain_);
  for (int dir = 0; dir < 3; ++dir) der_.ddx(prims_.temp, dir, grad_t_.comp(dir));

  // tau_ij = 2 (mu + mut) S_ij
  const double* mt = mut ? mut->data() : nullptr;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      const double* s = strain_.s.comp(i, j).data();
      double* t = tau_.comp(i, j).data();
#pragma omp parallel for schedule(static)
      for (std::ptrdiff_t m = 0; m < std::ptrdiff_t(n); ++m) {
        const double visc = mu_const + (mt ? mt[m] : 0.0);
        t[m] = 2.0 * visc * s[m];
      }
      if (j != i) {
        // symmetric
        double* tl = tau_.comp(j, i).data();
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t m = 0; m < std::ptrdiff_t(n); ++m) tl[m] = t[m];
      }
    }

  // momentum: + d tau_ij / dx_j
  for (int i = 0; i < 3; ++i)
    for (int dir = 0; dir < 3; ++dir) {
      der_.ddx(tau_.comp(i, dir), dir, dwork_);
      combine2(out.mom.comp(i), 1.0, out.mom.comp(i), 1.0, dwork_);
    }

  // energy: + d/dx_j (tau_ij u_i + k_eff dT/dx_j)
  for (int dir = 0; dir < 3; ++dir) {
    double* w = work_.data();
    const double* gt = grad_t_.comp(dir).data();
    const double* t0 = tau_.comp(0, dir).data();
    const double* t1 = tau_.comp(1, dir).data();
    const double* t2 = tau_.comp(2, dir).data();
    const double* u0 = prims_.vel.x().data();
    const double* u1 = prims_.vel.y().data();
    const double* u2 = prims_.vel.z().data();
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t m = 0; m < std::ptrdiff_t(n); ++m) {
      const double keff = lambda_const + (mt ? mt[m] * mut_heat_coeff : 0.0);
      w[m] = t0[m] * u0[m] + t1[m] * u1[m] + t2[m] * u2[m] + keff * gt[m];
    }
    der_.ddx(work_, dir, dwork_);
    combine2(out.rhoE, 1.0, out.rhoE, 1.0, dwork_);
  }
}

void RhsAssembler::viscous(const ConservedState& state, StateIncrement& out) {
  decode(state);
  out.zero();
  diffusive(thermo_.mu, nullptr, thermo_.lambda(), 0.0, out);
}

void RhsAssembler::sgs(const ConservedState& state, const ScalarField& mut, StateIncrement& out) {
  decode(state);
  out.zero();
  diffusive(0.0, &mut, 0.0, thermo_.cp / thermo_.prandtl_t, out);
}

void RhsAssembler::total(const ConservedState& state, const ScalarField* mut,
                         StateIncrement& out) {
  convective(state, out);  // decodes once; prims stay valid for the diffusive part
  const bool has_molecular = thermo_.mu > 0.0;
  if (!has_molecular && !mut) return;
  diffusive(thermo_.mu, mut, thermo_.lambda(), thermo_.cp / thermo_.prandtl_t, out);
}

RhsBudget RhsAssembler::budget(const ConservedState& state, const ScalarField* mut) {
  RhsBudget b(grid_);
  convective(state, b.convective);
  viscous(state, b.viscous);
  if (mut)
    sgs(state, *mut, b.sgs);
  else
    b.sgs.zero();
  return b;
}

StateIncrement convective_rhs(const ConservedState& state, const ThermoParams& thermo) {
  RhsAssembler a(state.grid(), thermo);
  StateIncrement out(state.grid());
  a.convective(state, out);
  return out;
}

StateIncrement viscous_rhs(const ConservedState& state, const ThermoParams& thermo) {
  RhsAssembler a(state.grid(), thermo);
  StateIncrement out(state.grid());
  a.viscous(state, out);
  return out;
}

StateIncrement sgs_rhs(const ConservedState& state, const ScalarField& mut,
                       const ThermoParams& thermo) {
  RhsAssembler a(state.grid(), thermo);
  StateIncrement out(state.grid());
  a.sgs(state, mut, out);
  return out;
}

double compute_dt(const ConservedState& state, const Primitives& prims,
                  const ThermoParams& thermo, double cfl, double mut_max) {
  const Grid& g = state.grid();
  const double gamma = thermo.gamma;
  const double* rho = state.rho.data();
  const double* p = prims.p.data();
  const double* u = prims.vel.x().data();
  const double* v = prims.vel.y().data();
  const double* w = prims.vel.z().data();

  const double inv_d[3] = {1.0 / g.dx, 1.0 / g.dy, 1.0 / g.dz};
  const double max_rate = max_over(g, [&](int i, int j, int k) {
    const std::size_t m = g.idx(i, j, k);
    const double c = std::sqrt(gamma * p[m] / rho[m]);
    double rate = (std::fabs(u[m]) + c) * inv_d[0];
    rate = std::fmax(rate, (std::fabs(v[m]) + c) * inv_d[1]);
    rate = std::fmax(rate, (std::fabs(w[m]) + c) * inv_d[2]);
    return rate;
  });

  double dt = cfl / max_rate;

  const double visc = thermo.mu + mut_max;
  if (visc > 0.0) {
    const double dmin = std::fmin(g.dx, std::fmin(g.dy, g.dz));
    const double rho_min = min_value(state.rho);
    const double dt_visc = dmin * dmin * rho_min / (2.0 * 3.0 * visc);
    dt = std::fmin(dt, dt_visc);
  }
  return dt;
}

void rk3_step(ConservedState& state, double dt, const RhsFn& rhs, Rk3Workspace& ws,
              const ThermoParams& thermo, const SolutionFilter* filter) {
  ConservedState& s1 = ws.stage;
  StateIncrement& k = ws.rhs;

  // stage 1: s1 = u + dt L(u)
  rhs(state, k);
  combine2(s1.rho, 1.0, state.rho, dt, k.rho);
  for (int c = 0; c < 3; ++c) combine2(s1.mom.comp(c), 1.0, state.mom.comp(c), dt, k.mom.comp(c));
  combine2(s1.rhoE, 1.0, state.rhoE, dt, k.rhoE);
  check_stage(s1, thermo);

  // stage 2: s1 = 3/4 u + 1/4 s1 + dt/4 L(s1)
  rhs(s1, k);
  combine3(s1.rho, 0.75, state.rho, 0.25, s1.rho, 0.25 * dt, k.rho);
  for (int c = 0; c < 3; ++c)
    combine3(s1.mom.comp(c), 0.75, state.mom.comp(c), 0.25, s1.mom.comp(c), 0.25 * dt,
             k.mom.comp(c));
  combine3(s1.rhoE, 0.75, state.rhoE, 0.25, s1.rhoE, 0.25 * dt, k.rhoE);
  check_stage(s1, thermo);

  // stage 3: u = 1/3 u + 2/3 s1 + 2 dt/3 L(s1)
  rhs(s1, k);
  const double c1 = 1.0 / 3.0, c2 = 2.0 / 3.0;
  combine3(state.rho, c1, state.rho, c2, s1.rho, c2 * dt, k.rho);
  for (int c = 0; c < 3; ++c)
    combine3(state.mom.comp(c), c1, state.mom.comp(c), c2, s1.mom.comp(c), c2 * dt,
             k.mom.comp(c));
  combine3(state.rhoE, c1, state.rhoE, c2, s1.rhoE, c2 * dt, k.rhoE);

  if (filter) for_each_field(state, [&](ScalarField& f) { filter->apply_inplace(f); });
  check_stage(state, thermo);
}

}  // namespace cvples
