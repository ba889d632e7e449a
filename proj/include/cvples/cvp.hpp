#pragma once

#include "cvples/compact.hpp"
#include "cvples/field.hpp"
#include "cvples/test_filter.hpp"

namespace cvples {

enum class InterpolantMode { identity, int6 };

/// Which field the sensor test-filters. The vorticity form filters the three
/// vorticity components and takes sigma = omega . filtered(omega) / (2 xi):
/// its spectral content carries a single filter transfer function, matching
/// the k^(1/3)-weighted quadrature that defines sigma_eq, and opposite-signed
/// neighborhoods cancel instead of leaking into enstrophy valleys. The
/// enstrophy form filters the scalar xi directly.
enum class SensorSource { vorticity, enstrophy };

/// Configuration of the enstrophy-ratio turbulence sensor.
struct CvpConfig {
  TestFilterSpec filter;
  AxisSet axes = AxisSet::all();
  SensorSource source = SensorSource::vorticity;
  double sigma_eq = 0.0;  // <= 0: computed at startup via the quadrature
  InterpolantMode interpolant = InterpolantMode::identity;
  double enstrophy_floor = 1e-12;

  double resolve_sigma_eq() const;
};

/// omega = curl u with compact derivatives.
void vorticity(const Derivatives& der, const VectorField& u, VectorField& out);

/// xi = |curl u|^2 / 2, computed with the compact derivatives.
void enstrophy(const Derivatives& der, const VectorField& u, ScalarField& out);
ScalarField enstrophy(const Derivatives& der, const VectorField& u);

/// sigma = test-filtered enstrophy over resolved enstrophy, pointwise.
/// Nodes with xi below the floor report sigma = 1 (no vorticity, sensor off);
/// negative filtered enstrophy is clamped to zero before the division.
void sigma_field(const ScalarField& xi, const TestFilter& filter, AxisSet axes,
                 double enstrophy_floor, ScalarField& out);

/// Vorticity-form sigma: omega . filtered(omega) / (2 xi) with the same floor
/// and clamping rules. xi must be the enstrophy of the same omega.
void sigma_field_vorticity(const VectorField& omega, const ScalarField& xi,
                           const TestFilter& filter, AxisSet axes, double enstrophy_floor,
                           ScalarField& out);

/// Equilibrium threshold for ideal sharp filters: r_delta^(-4/3).
double sigma_eq_sharp(double r_delta);

/// Equilibrium threshold from the k^(1/3)-weighted transfer-function
/// quadrature (Simpson, 2048 panels on [0, pi]).
double sigma_eq_quadrature(const TestFilterSpec& filter, InterpolantMode mode);

/// Same quadrature with an ideal sharp test filter cutting at pi/r_delta;
/// the integral is split at the cutoff so the discontinuity costs nothing.
double sigma_eq_quadrature_sharp(double r_delta, InterpolantMode mode);

/// Piecewise sine blend: 1 below sigma_eq, 0 above 1, continuous at both joints.
double sensor_f_scalar(double sigma, double sigma_eq);
void sensor_f(const ScalarField& sigma, double sigma_eq, ScalarField& out);

/// mut_cvp = f * mut, pointwise. Never amplifies and keeps mut >= 0.
void apply_cvp(const ScalarField& mut, const ScalarField& f, ScalarField& out);
ScalarField apply_cvp(const ScalarField& mut, const ScalarField& f);

}  // namespace cvples
