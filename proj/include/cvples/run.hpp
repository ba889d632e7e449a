#pragma once

#include <string>
#include <vector>

#include "cvples/config.hpp"

namespace cvples {

struct RunStats {
  bool completed = false;
  bool blew_up = false;
  std::string blow_up_reason;
  long steps = 0;
  double sim_time = 0.0;
  double step_seconds = 0.0;  // wall time inside the numerical step loop, I/O excluded
  double final_energy = 0.0;
  double mean_f_last = 1.0;
  double sigma_eq = 0.0;
  long filter_apps = 0;  // test-filter applications during the run
  std::string csv_path;
};

/// Runs the configured case to t_end. Diagnostics are flushed even when the
/// solver blows up; blow-up is reported in the stats, not thrown.
RunStats run(const RunConfig& cfg);

struct OverheadRow {
  std::string label;
  long steps = 0;
  double seconds = 0.0;
  double per_step = 0.0;
  double relative = 0.0;  // per-step time over the no-model baseline
};

/// Runs every config and reports per-step wall time relative to the no-model
/// baseline (the first config without SGS model and sensor, else the first).
std::vector<OverheadRow> measure_overhead(const std::vector<RunConfig>& configs);

}  // namespace cvples
