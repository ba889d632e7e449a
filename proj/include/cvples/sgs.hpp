#pragma once

#include <string>

#include "cvples/compact.hpp"
#include "cvples/field.hpp"
#include "cvples/test_filter.hpp"

namespace cvples {

enum class SgsModel { none, smagorinsky, structure_function, vreman, dynamic_smagorinsky };

SgsModel sgs_model_from_string(const std::string& s);
const char* to_string(SgsModel m);

struct SgsModelConfig {
  SgsModel kind = SgsModel::none;
  double cs = 0.172;        // Smagorinsky constant
  double ck = 1.5;          // Kolmogorov constant (structure-function model)
  double vreman_c = -1.0;   // < 0: derived as 2.5 * cs^2
  double dynamic_floor = 0.0;  // lower clip for the dynamic coefficient
  double eps_den = 1e-30;   // guard for vanishing denominators

  double vreman_constant() const { return vreman_c >= 0.0 ? vreman_c : 2.5 * cs * cs; }
};

/// Deviatoric strain rate S = 1/2 (grad u + grad u^T) - 1/3 (div u) I and its
/// magnitude sqrt(S:S) (no factor 2; every model here uses this convention).
struct StrainRate {
  TensorField s;
  ScalarField mag;

  StrainRate() = default;
  explicit StrainRate(const Grid& g) : s(g), mag(g) {}
};

void strain_rate(const TensorField& grad_u, StrainRate& out);
StrainRate strain_rate(const TensorField& grad_u);
StrainRate strain_rate(const Derivatives& der, const VectorField& u);

void mut_smagorinsky(const ScalarField& rho, const StrainRate& strain, const SgsModelConfig& cfg,
                     ScalarField& out);

/// Requires isotropic spacing; the two-point differences are taken at the six
/// axis neighbors one cell away.
void mut_structure_function(const ScalarField& rho, const VectorField& u,
                            const SgsModelConfig& cfg, ScalarField& out);

void mut_vreman(const ScalarField& rho, const TensorField& grad_u, const SgsModelConfig& cfg,
                ScalarField& out);

/// Germano-identity dynamic Smagorinsky with a single volume-averaged
/// coefficient, clipped at cfg.dynamic_floor. Returns the coefficient C_D
/// (dimension length^2; it absorbs the grid-filter width). Exactly 21
/// test-filter applications are performed per call.
double mut_dynamic_smagorinsky(const ScalarField& rho, const VectorField& u,
                               const StrainRate& strain, const TestFilter& filter,
                               const SgsModelConfig& cfg, ScalarField& out);

}  // namespace cvples
