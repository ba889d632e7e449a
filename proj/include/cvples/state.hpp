#pragma once

#include "cvples/field.hpp"

namespace cvples {

/// Gas and transport properties. Nondimensional runs pick cp so that the gas
/// constant r = cp(gamma-1)/gamma comes out as 1.
struct ThermoParams {
  double gamma = 1.4;
  double mu = 0.0;        // dynamic viscosity, fixed per run
  double prandtl = 0.7;   // molecular Prandtl number
  double prandtl_t = 0.5; // turbulent Prandtl number
  double cp = 3.5;

  double r() const { return cp * (gamma - 1.0) / gamma; }
  double lambda() const { return prandtl > 0.0 ? mu * cp / prandtl : 0.0; }

  void validate() const;
};

/// The five conserved fields: density, momentum, total energy density.
struct ConservedState {
  ScalarField rho;
  VectorField mom;
  ScalarField rhoE;

  ConservedState() = default;
  explicit ConservedState(const Grid& g) : rho(g, 1.0), mom(g), rhoE(g) {}

  const Grid& grid() const { return rho.grid(); }
};

struct Primitives {
  VectorField vel;
  ScalarField p;
  ScalarField temp;

  Primitives() = default;
  explicit Primitives(const Grid& g) : vel(g), p(g), temp(g) {}
};

/// Inverts the conserved variables into velocity, pressure (ideal gas) and
/// temperature. Throws non_positive_density / non_positive_pressure when the
/// state is unphysical, which is the solver blow-up signal.
void primitive_decode(const ConservedState& state, const ThermoParams& thermo, Primitives& out);
Primitives primitive_decode(const ConservedState& state, const ThermoParams& thermo);

/// Assembles a conserved state from density, velocity and pressure fields.
ConservedState conserved_encode(const ScalarField& rho, const VectorField& vel,
                                const ScalarField& p, const ThermoParams& thermo);

}  // namespace cvples
