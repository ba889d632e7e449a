#pragma once

#include <functional>

#include "cvples/compact.hpp"
#include "cvples/sgs.hpp"
#include "cvples/state.hpp"

namespace cvples {

/// ConservedState-shaped increment (no positivity constraints).
struct StateIncrement {
  ScalarField rho;
  VectorField mom;
  ScalarField rhoE;

  StateIncrement() = default;
  explicit StateIncrement(const Grid& g) : rho(g), mom(g), rhoE(g) {}

  void zero();
  void add(const StateIncrement& other);
};

/// Per-term RHS contributions; total() is their exact pointwise sum.
struct RhsBudget {
  StateIncrement convective, viscous, sgs;

  RhsBudget() = default;
  explicit RhsBudget(const Grid& g) : convective(g), viscous(g), sgs(g) {}

  StateIncrement total() const;
};

/// Assembles the semi-discrete right-hand side of the filtered compressible
/// Navier-Stokes equations in divergence form with compact derivatives.
class RhsAssembler {
 public:
  RhsAssembler(const Grid& g, const ThermoParams& thermo);

  /// -div F_c (convective fluxes).
  void convective(const ConservedState& state, StateIncrement& out);

  /// +div F_v with tau = 2 mu S and Fourier heat flux lambda grad T.
  void viscous(const ConservedState& state, StateIncrement& out);

  /// +div F_sgs: tau_t = 2 mut S and eddy heat flux (mut cp / Pr_t) grad T.
  /// Same stencil pipeline as the viscous term with mu replaced by mut.
  void sgs(const ConservedState& state, const ScalarField& mut, StateIncrement& out);

  /// Fused convective + viscous + SGS evaluation (one diffusive pipeline with
  /// the effective viscosity); equals the budget sum up to roundoff.
  void total(const ConservedState& state, const ScalarField* mut, StateIncrement& out);

  RhsBudget budget(const ConservedState& state, const ScalarField* mut);

  const Derivatives& derivatives() const { return der_; }
  const ThermoParams& thermo() const { return thermo_; }

 private:
  void decode(const ConservedState& state);
  void diffusive(double mu_const, const ScalarField* mut, double lambda_const,
                 double mut_heat_coeff, StateIncrement& out);

  Grid grid_;
  ThermoParams thermo_;
  Derivatives der_;
  Primitives prims_;
  TensorField grad_u_, tau_;
  StrainRate strain_;
  VectorField grad_t_;
  ScalarField work_, dwork_;
};

StateIncrement convective_rhs(const ConservedState& state, const ThermoParams& thermo);
StateIncrement viscous_rhs(const ConservedState& state, const ThermoParams& thermo);
StateIncrement sgs_rhs(const ConservedState& state, const ScalarField& mut,
                       const ThermoParams& thermo);

/// dt = min(cfl * acoustic limit, viscous limit); the acoustic limit is the
/// smallest per-axis delta/(|u_ax| + c) over the field, the viscous limit is
/// min(delta)^2 rho_min / (2 * 3 * (mu + mut_max)).
double compute_dt(const ConservedState& state, const Primitives& prims,
                  const ThermoParams& thermo, double cfl, double mut_max);

using RhsFn = std::function<void(const ConservedState&, StateIncrement&)>;

struct Rk3Workspace {
  ConservedState stage;
  StateIncrement rhs;

  Rk3Workspace() = default;
  explicit Rk3Workspace(const Grid& g) : stage(g), rhs(g) {}
};

/// Three-stage strong-stability-preserving Runge-Kutta step. Throws
/// solver_blow_up if any stage produces NaN or non-positive density/pressure.
/// When `filter` is given, the five conserved fields are filtered once after
/// the full step.
void rk3_step(ConservedState& state, double dt, const RhsFn& rhs, Rk3Workspace& ws,
              const ThermoParams& thermo, const SolutionFilter* filter = nullptr);

}  // namespace cvples
