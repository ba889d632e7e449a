#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cvples/cases.hpp"
#include "cvples/cvp.hpp"
#include "cvples/sgs.hpp"

namespace cvples {

enum class CaseKind { tgv, helix };

enum class SigmaEqChoice {
  quadrature,  // computed at startup from the configured filter
  preset,      // published thresholds 0.34 / 0.54 / 0.71 by filter kind
  value,       // explicit number
};

/// Fully validated run description. Sources, in increasing precedence:
/// built-in defaults, config file, CVPLES_OUT_DIR, command-line overrides.
struct RunConfig {
  CaseKind kind = CaseKind::tgv;
  int nx = 0, ny = 0, nz = 0;

  double t_end = 0.0;
  double cfl = 0.5;
  long max_steps = 1000000;
  std::uint64_t seed = 0;

  long diag_every = 10;        // steps
  double spectra_every = 0.0;  // time units; 0 disables
  double snapshot_every = 0.0; // time units; 0 disables
  std::string out_dir = "out";

  double gamma = 1.4;
  double prandtl = 0.7;
  double prandtl_t = 0.5;

  SgsModelConfig sgs;
  bool mut_per_stage = false;

  bool cvp_enabled = false;
  FilterKind test_filter = FilterKind::gauss;
  double filter_alpha = -0.4;
  AxisSet cvp_axes = AxisSet::all();
  SensorSource sensor_source = SensorSource::vorticity;
  SigmaEqChoice sigma_eq_choice = SigmaEqChoice::quadrature;
  double sigma_eq_value = 0.0;
  InterpolantMode interpolant = InterpolantMode::identity;
  double enstrophy_floor = -1.0;  // < 0: 1e-12 (V_ref / L_ref)^2 at startup

  bool use_solution_filter = true;
  double filter_strength = 0.49;

  TgvParams tgv;
  HelixParams helix;

  TestFilterSpec filter_spec() const { return TestFilterSpec::make(test_filter, filter_alpha); }
  double preset_sigma_eq() const;
  std::string case_name() const { return kind == CaseKind::tgv ? "tgv" : "helix"; }
};

using KeyValue = std::pair<std::string, std::string>;

/// Parses flat key=value text ('#' starts a comment). Overrides are applied
/// on top; unknown keys and malformed values are hard errors naming the key.
RunConfig parse_config(const std::string& text, const std::vector<KeyValue>& overrides = {});

RunConfig parse_config_file(const std::string& path, const std::vector<KeyValue>& overrides = {});

}  // namespace cvples
