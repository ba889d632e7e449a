#include "cvples/run.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <memory>
#include <optional>

#include "cvples/cvp.hpp"
#include "cvples/error.hpp"
#include "cvples/io.hpp"
#include "cvples/reduce.hpp"
#include "cvples/spectrum.hpp"

namespace cvples {

namespace {

using Clock = std::chrono::steady_clock;

std::string zero_padded(long v, int width) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%0*ld", width, v);
  return buf;
}

/// Owns the per-run engines and scratch fields.
class Runner {
 public:
  explicit Runner(const RunConfig& cfg) : cfg_(cfg) {}

  RunStats go() {
    setup();
    RunStats stats;
    stats.sigma_eq = sigma_eq_;
    stats.csv_path = csv_->path();
    const long filter_apps0 = test_filter_application_count();

    try {
      loop();
      stats.completed = true;
    } catch (const Error& e) {
      const bool blow_up = e.kind() == errc::solver_blow_up ||
                           e.kind() == errc::non_positive_density ||
                           e.kind() == errc::non_positive_pressure;
      if (!blow_up) {
        csv_->finalize();
        throw;
      }
      stats.blew_up = true;
      stats.blow_up_reason = e.what();
      flush_blowup_row();
    }

    csv_->finalize();
    stats.steps = step_;
    stats.sim_time = t_;
    stats.step_seconds = step_seconds_;
    stats.final_energy = last_energy_;
    stats.mean_f_last = last_mean_f_;
    stats.filter_apps = test_filter_application_count() - filter_apps0;
    return stats;
  }

 private:
  void setup() {
    ensure_directory(cfg_.out_dir);

    if (cfg_.kind == CaseKind::tgv) {
      grid_ = tgv_grid(cfg_.nx, cfg_.ny, cfg_.nz, cfg_.tgv.length);
      thermo_ = tgv_thermo(cfg_.tgv, cfg_.gamma);
      thermo_.prandtl = cfg_.prandtl;
      thermo_.prandtl_t = cfg_.prandtl_t;
      state_ = init_tgv(grid_, cfg_.tgv, thermo_);
      v_ref_ = cfg_.tgv.v0;
      l_ref_ = cfg_.tgv.length;
    } else {
      grid_ = helix_grid(cfg_.nx, cfg_.ny, cfg_.nz, cfg_.helix);
      HelixInit init = init_helix(grid_, cfg_.helix, cfg_.gamma, cfg_.seed);
      thermo_ = init.thermo;
      thermo_.prandtl = cfg_.prandtl;
      thermo_.prandtl_t = cfg_.prandtl_t;
      state_ = std::move(init.state);
      v_ref_ = init.peak_speed;
      l_ref_ = cfg_.helix.radius;
    }

    assembler_ = std::make_unique<RhsAssembler>(grid_, thermo_);
    ws_ = Rk3Workspace(grid_);
    prims_ = Primitives(grid_);
    if (cfg_.use_solution_filter)
      sol_filter_ = std::make_unique<SolutionFilter>(grid_, cfg_.filter_strength);

    model_active_ = cfg_.sgs.kind != SgsModel::none;
    if (model_active_) {
      mut_ = ScalarField(grid_);
      strain_ = StrainRate(grid_);
      grad_u_ = TensorField(grid_);
      vel_ = VectorField(grid_);
      if (cfg_.sgs.kind == SgsModel::dynamic_smagorinsky)
        dyn_filter_ = std::make_unique<TestFilter>(grid_, TestFilterSpec::impl6(-0.4));
    }

    if (cfg_.cvp_enabled) {
      if (!model_active_)
        fail(errc::bad_value, "cvp needs an SGS model (set sgs=...)");
      cvp_filter_ = std::make_unique<TestFilter>(grid_, cfg_.filter_spec());
      omega_ = VectorField(grid_);
      switch (cfg_.sigma_eq_choice) {
        case SigmaEqChoice::quadrature:
          sigma_eq_ = sigma_eq_quadrature(cfg_.filter_spec(), cfg_.interpolant);
          break;
        case SigmaEqChoice::preset:
          sigma_eq_ = cfg_.preset_sigma_eq();
          break;
        case SigmaEqChoice::value:
          sigma_eq_ = cfg_.sigma_eq_value;
          break;
      }
      xi_ = ScalarField(grid_);
      sigma_ = ScalarField(grid_);
      fsens_ = ScalarField(grid_);
      const double scale = v_ref_ / l_ref_;
      floor_ = cfg_.enstrophy_floor > 0.0 ? cfg_.enstrophy_floor : 1e-12 * scale * scale;
    }

    csv_ = std::make_unique<DiagnosticsCsv>(cfg_.out_dir + "/diagnostics.csv",
                                            cfg_.kind == CaseKind::helix);
  }

  /// Model viscosity (with sensor correction) from the current state.
  void refresh_mut(const ConservedState& s) {
    if (!model_active_) return;
    primitive_decode(s, thermo_, prims_);
    vel_ = prims_.vel;

    const bool needs_gradient = cfg_.sgs.kind != SgsModel::structure_function;
    if (needs_gradient) {
      assembler_->derivatives().gradient(vel_, grad_u_);
      strain_rate(grad_u_, strain_);
    }
    switch (cfg_.sgs.kind) {
      case SgsModel::smagorinsky:
        mut_smagorinsky(s.rho, strain_, cfg_.sgs, mut_);
        break;
      case SgsModel::structure_function:
        mut_structure_function(s.rho, vel_, cfg_.sgs, mut_);
        break;
      case SgsModel::vreman:
        mut_vreman(s.rho, grad_u_, cfg_.sgs, mut_);
        break;
      case SgsModel::dynamic_smagorinsky:
        mut_dynamic_smagorinsky(s.rho, vel_, strain_, *dyn_filter_, cfg_.sgs, mut_);
        break;
      case SgsModel::none:
        break;
    }

    if (cfg_.cvp_enabled) {
      if (cfg_.sensor_source == SensorSource::vorticity) {
        vorticity(assembler_->derivatives(), vel_, omega_);
        const double* wx = omega_.x().data();
        const double* wy = omega_.y().data();
        const double* wz = omega_.z().data();
        double* x = xi_.data();
        const std::size_t n = xi_.size();
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t m = 0; m < std::ptrdiff_t(n); ++m)
          x[m] = 0.5 * (wx[m] * wx[m] + wy[m] * wy[m] + wz[m] * wz[m]);
        sigma_field_vorticity(omega_, xi_, *cvp_filter_, cfg_.cvp_axes, floor_, sigma_);
      } else {
        enstrophy(assembler_->derivatives(), vel_, xi_);
        sigma_field(xi_, *cvp_filter_, cfg_.cvp_axes, floor_, sigma_);
      }
      sensor_f(sigma_, sigma_eq_, fsens_);
      apply_cvp(mut_, fsens_, mut_);
    }
  }

  DiagnosticsRecord diagnostics_row(double dt) {
    DiagnosticsRecord r;
    r.step = step_;
    r.t = t_;
    r.dt = dt;
    r.e = kinetic_energy(state_);
    r.min_rho = min_value(state_.rho);

    Primitives p = primitive_decode(state_, thermo_);
    ScalarField div(grid_);
    assembler_->derivatives().divergence(p.vel, div);
    r.max_div = max_abs(div);

    if (model_active_) {
      StrainRate strain = strain_rate(assembler_->derivatives(), p.vel);
      r.eps_sgs = sgs_dissipation(mut_, strain);
      r.max_mut = max_value(mut_);
    }
    if (cfg_.cvp_enabled) {
      r.mean_f = volume_average(fsens_);
      r.min_sigma = min_value(sigma_);
      r.max_sigma = max_value(sigma_);
    }
    if (cfg_.kind == CaseKind::helix)
      r.d_dev = vortex_deviation(assembler_->derivatives(), state_, cfg_.helix);

    last_energy_ = r.e;
    last_mean_f_ = r.mean_f;
    return r;
  }

  void sample_outputs() {
    if (cfg_.spectra_every > 0.0 && t_ + 1e-12 >= next_spectra_) {
      if (grid_.cubic()) {
        Primitives p = primitive_decode(state_, thermo_);
        write_spectrum(energy_spectrum(p.vel), t_,
                       cfg_.out_dir + "/spectrum_" + zero_padded(step_, 8) + ".txt");
      }
      next_spectra_ += cfg_.spectra_every;
    }
    if (cfg_.snapshot_every > 0.0 && t_ + 1e-12 >= next_snapshot_) {
      write_snapshot(state_, t_, cfg_.out_dir + "/snapshot_" + zero_padded(step_, 8) + ".bin");
      next_snapshot_ += cfg_.snapshot_every;
    }
  }

  void loop() {
    RhsFn rhs = [this](const ConservedState& s, StateIncrement& out) {
      if (cfg_.mut_per_stage) refresh_mut(s);
      assembler_->total(s, model_active_ ? &mut_ : nullptr, out);
    };

    sample_outputs();
    while (t_ < cfg_.t_end * (1.0 - 1e-12) && step_ < cfg_.max_steps) {
      const auto tic = Clock::now();
      if (model_active_)
        refresh_mut(state_);  // decodes prims_ as a side effect
      else
        primitive_decode(state_, thermo_, prims_);
      const double mut_max = model_active_ ? max_value(mut_) : 0.0;
      double dt = compute_dt(state_, prims_, thermo_, cfg_.cfl, mut_max);
      if (t_ + dt > cfg_.t_end) dt = cfg_.t_end - t_;
      step_seconds_ += std::chrono::duration<double>(Clock::now() - tic).count();

      if (step_ % cfg_.diag_every == 0) csv_->write_row(diagnostics_row(dt));

      const auto tic2 = Clock::now();
      rk3_step(state_, dt, rhs, ws_, thermo_, sol_filter_.get());
      step_seconds_ += std::chrono::duration<double>(Clock::now() - tic2).count();

      t_ += dt;
      ++step_;
      last_dt_ = dt;
      sample_outputs();
    }
    // closing row so the series always ends at the final time
    csv_->write_row(diagnostics_row(last_dt_));
  }

  void flush_blowup_row() {
    DiagnosticsRecord r;
    r.step = step_;
    r.t = t_;
    r.dt = last_dt_;
    r.e = std::nan("");
    r.min_rho = min_value(state_.rho);
    r.mean_f = last_mean_f_;
    csv_->write_row(r);
  }

  RunConfig cfg_;
  Grid grid_;
  ThermoParams thermo_;
  ConservedState state_;
  Primitives prims_;
  Rk3Workspace ws_;
  std::unique_ptr<RhsAssembler> assembler_;
  std::unique_ptr<SolutionFilter> sol_filter_;
  std::unique_ptr<TestFilter> cvp_filter_, dyn_filter_;
  std::unique_ptr<DiagnosticsCsv> csv_;

  bool model_active_ = false;
  ScalarField mut_, xi_, sigma_, fsens_;
  VectorField omega_;
  StrainRate strain_;
  TensorField grad_u_;
  VectorField vel_;

  double sigma_eq_ = 0.0, floor_ = 0.0;
  double v_ref_ = 1.0, l_ref_ = 1.0;
  double t_ = 0.0, last_dt_ = 0.0;
  long step_ = 0;
  double step_seconds_ = 0.0;
  double last_energy_ = 0.0, last_mean_f_ = 1.0;
  double next_spectra_ = 0.0, next_snapshot_ = 0.0;
};

}  // namespace

RunStats run(const RunConfig& cfg) {
  Runner runner(cfg);
  return runner.go();
}

std::vector<OverheadRow> measure_overhead(const std::vector<RunConfig>& configs) {
  std::vector<OverheadRow> rows;
  rows.reserve(configs.size());
  int baseline = 0;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    if (configs[i].sgs.kind == SgsModel::none && !configs[i].cvp_enabled) {
      baseline = int(i);
      break;
    }
  }
  for (const RunConfig& cfg : configs) {
    RunStats s = run(cfg);
    OverheadRow row;
    row.label = to_string(cfg.sgs.kind);
    if (cfg.cvp_enabled) row.label = "cvp+" + row.label;
    row.steps = s.steps;
    row.seconds = s.step_seconds;
    row.per_step = s.steps > 0 ? s.step_seconds / double(s.steps) : 0.0;
    rows.push_back(row);
  }
  const double base = rows.at(baseline).per_step;
  for (OverheadRow& row : rows) row.relative = base > 0.0 ? row.per_step / base : 0.0;
  return rows;
}

}  // namespace cvples
