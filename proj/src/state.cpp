#include "cvples/state.hpp"

#include <cmath>
#include <string>

#include "cvples/error.hpp"

namespace cvples {

void ThermoParams::validate() const {
  if (!(gamma > 1.0)) fail(errc::invalid_argument, "gamma must exceed 1");
  if (mu < 0.0) fail(errc::invalid_argument, "viscosity must be non-negative");
  if (!(prandtl > 0.0)) fail(errc::invalid_argument, "prandtl must be positive");
  if (!(prandtl_t > 0.0)) fail(errc::invalid_argument, "prandtl_t must be positive");
  if (!(cp > 0.0)) fail(errc::invalid_argument, "cp must be positive");
}

void primitive_decode(const ConservedState& state, const ThermoParams& thermo, Primitives& out) {
  const Grid& g = state.grid();
  const double gm1 = thermo.gamma - 1.0;
  const double rinv = 1.0 / thermo.r();

  const double* rho = state.rho.data();
  const double* mx = state.mom.x().data();
  const double* my = state.mom.y().data();
  const double* mz = state.mom.z().data();
  const double* re = state.rhoE.data();
  double* u = out.vel.x().data();
  double* v = out.vel.y().data();
  double* w = out.vel.z().data();
  double* p = out.p.data();
  double* t = out.temp.data();

  const std::size_t n = g.size();
  bool bad_rho = false, bad_p = false;
#pragma omp parallel for schedule(static) reduction(|| : bad_rho, bad_p)
  for (std::ptrdiff_t m = 0; m < std::ptrdiff_t(n); ++m) {
    const double r = rho[m];
    if (!(r > 0.0) || !std::isfinite(r)) {
      bad_rho = true;
      continue;
    }
    const double ir = 1.0 / r;
    const double ux = mx[m] * ir, uy = my[m] * ir, uz = mz[m] * ir;
    const double pr = gm1 * (re[m] - 0.5 * r * (ux * ux + uy * uy + uz * uz));
    u[m] = ux;
    v[m] = uy;
    w[m] = uz;
    p[m] = pr;
    t[m] = pr * ir * rinv;
    if (!(pr > 0.0) || !std::isfinite(pr)) bad_p = true;
  }
  if (bad_rho) fail(errc::non_positive_density, "non-positive or non-finite density");
  if (bad_p) fail(errc::non_positive_pressure, "non-positive or non-finite pressure");
}

Primitives primitive_decode(const ConservedState& state, const ThermoParams& thermo) {
  Primitives out(state.grid());
  primitive_decode(state, thermo, out);
  return out;
}

ConservedState conserved_encode(const ScalarField& rho, const VectorField& vel,
                                const ScalarField& p, const ThermoParams& thermo) {
  const Grid& g = rho.grid();
  ConservedState s(g);
  const double igm1 = 1.0 / (thermo.gamma - 1.0);
  for (std::size_t m = 0; m < g.size(); ++m) {
    const double r = rho[m];
    const double u = vel.x()[m], v = vel.y()[m], w = vel.z()[m];
    s.rho[m] = r;
    s.mom.x()[m] = r * u;
    s.mom.y()[m] = r * v;
    s.mom.z()[m] = r * w;
    s.rhoE[m] = p[m] * igm1 + 0.5 * r * (u * u + v * v + w * w);
  }
  return s;
}

}  // namespace cvples
