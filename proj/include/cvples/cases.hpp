#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cvples/compact.hpp"
#include "cvples/sgs.hpp"
#include "cvples/solver.hpp"
#include "cvples/state.hpp"

namespace cvples {

struct TgvParams {
  double re = 5000.0;
  double mach = 0.1;
  double length = 1.0;  // L
  double v0 = 1.0;
  double rho0 = 1.0;

  void validate() const;
  double p0(double gamma) const { return rho0 * (v0 / mach) * (v0 / mach) / gamma; }
};

/// Grid for the [-pi L, pi L]^3 box.
Grid tgv_grid(int nx, int ny, int nz, double length = 1.0);

/// Gas properties for the vortex box: mu from Re, cp chosen so the gas
/// constant is 1.
ThermoParams tgv_thermo(const TgvParams& prm, double gamma = 1.4);

/// Samples the analytic initial fields and assembles the conserved state.
ConservedState init_tgv(const Grid& g, const TgvParams& prm, const ThermoParams& thermo);

struct HelixParams {
  double radius = 0.115;      // helix radius R
  double pitch_ratio = 1.1;   // h / R
  double core_ratio = 0.06;   // r_c / R
  int kernel_n = 4;           // smoothing-kernel exponent; 0 means the Rankine limit
  double re_gamma = 7000.0;   // Gamma / nu
  double circulation = 1.0;   // Gamma, sets the velocity scale
  int n_filaments = 2;
  int n_turns = 4;
  double box_lx = 0.5;        // L_X = L_Z; L_Y = n_turns * pitch exactly
  int image_layers = 8;       // axial periodic images per side
  double mach_peak = 0.1;
  double rho0 = 1.0;
  double perturb_amp = 1e-4;  // white-noise velocity seed, relative to peak |u|
  int theta_per_turn = 512;

  void validate() const;
  double pitch() const { return pitch_ratio * radius; }
  double core_radius() const { return core_ratio * radius; }
  double ly() const { return n_turns * pitch(); }
};

Grid helix_grid(int nx, int ny, int nz, const HelixParams& prm);

/// Regularized Biot-Savart evaluation of helical filaments (plus axial
/// periodic images). Coordinates are relative to the helix axis: the axis
/// runs along y through (x, z) = (0, 0).
class BiotSavartFilaments {
 public:
  BiotSavartFilaments(const HelixParams& prm, int theta_per_turn, int image_layers);

  /// Single straight filament along y with period ly, sharing the kernel and
  /// quadrature; this is the Rankine-limit reference geometry.
  static BiotSavartFilaments straight_filament(double circulation, double core_radius,
                                               int kernel_n, double ly, int samples_per_span,
                                               int image_layers);

  void velocity(double x, double y, double z, double out[3]) const;
  double speed(double x, double y, double z) const;

  /// Fills the grid field; the axis is placed at the box center in x and z.
  void evaluate(const Grid& g, VectorField& out) const;

 private:
  struct Samples {
    std::vector<double> px, py, pz, tx, ty, tz, w;
  };

  BiotSavartFilaments() = default;
  void add_filament(double phase, double theta0, double theta_span, int samples, Samples& dst);
  void build(int n_filaments, int n_turns, int theta_per_turn, int image_layers);

  double radius_ = 0.0;
  double ell_ = 0.0;  // pitch / 2 pi
  double rc2_ = 0.0;
  double circulation_ = 0.0;
  int kernel_n_ = 4;
  Samples near_, far_;
};

struct HelixInit {
  ConservedState state;
  ThermoParams thermo;
  double peak_speed = 0.0;
};

/// Biot-Savart initialization of the double helix: uniform density and
/// pressure, sound speed chosen so the peak Mach number matches the target.
/// Verifies quadrature convergence by re-evaluating the peak-speed node with
/// doubled theta sampling and doubled image layers (0.1% tolerance each).
HelixInit init_helix(const Grid& g, const HelixParams& prm, double gamma = 1.4,
                     std::uint64_t seed = 0);

/// E = <u.u>/2 with u = mom / rho.
double kinetic_energy(const ConservedState& state);

/// eps = dE/dt by second-order central differences (one-sided endpoints).
std::vector<double> dissipation_series(const std::vector<double>& t, const std::vector<double>& e);

/// <mut S:S>, the paper-convention subgrid dissipation (no factor 2).
double sgs_dissipation(const ScalarField& mut, const StrainRate& strain);

/// Mean distance of the per-plane vorticity-magnitude maxima from the helix
/// radius; sub-cell localization by parabolic refinement in x and z.
double vortex_deviation(const Derivatives& der, const ConservedState& state,
                        const HelixParams& prm);

struct GrowthFit {
  double rate = 0.0;
  double r2 = 0.0;
  bool reliable = false;
};

/// Least-squares slope of ln d(t) over [t_begin, t_end]. Throws degenerate_fit
/// when fewer than 4 usable samples fall in the window; R^2 < 0.5 only clears
/// the `reliable` flag.
GrowthFit growth_rate_fit(const std::vector<double>& t, const std::vector<double>& d,
                          double t_begin, double t_end);

}  // namespace cvples
