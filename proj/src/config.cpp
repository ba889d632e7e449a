#include "cvples/config.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "cvples/error.hpp"

namespace cvples {

double RunConfig::preset_sigma_eq() const {
  switch (test_filter) {
    case FilterKind::gauss: return 0.34;
    case FilterKind::expl4: return 0.54;
    default: return 0.71;
  }
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

class KeyMap {
 public:
  void put(const std::string& key, const std::string& value) { kv_[key] = value; }

  bool has(const std::string& key) const { return kv_.count(key) != 0; }

  std::string raw(const std::string& key) {
    seen_.insert(key);
    return kv_.at(key);
  }

  double number(const std::string& key) {
    const std::string v = raw(key);
    try {
      std::size_t pos = 0;
      const double x = std::stod(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return x;
    } catch (const std::exception&) {
      fail(errc::bad_value, "key '" + key + "': cannot parse number from '" + v + "'");
    }
  }

  long integer(const std::string& key) {
    const std::string v = raw(key);
    try {
      std::size_t pos = 0;
      const long x = std::stol(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return x;
    } catch (const std::exception&) {
      fail(errc::bad_value, "key '" + key + "': cannot parse integer from '" + v + "'");
    }
  }

  bool flag(const std::string& key) {
    const std::string v = raw(key);
    if (v == "on" || v == "true" || v == "1") return true;
    if (v == "off" || v == "false" || v == "0") return false;
    fail(errc::bad_value, "key '" + key + "': expected on/off, got '" + v + "'");
  }

  void check_all_consumed() const {
    for (const auto& [key, value] : kv_)
      if (!seen_.count(key)) fail(errc::unknown_key, "unknown config key '" + key + "'");
  }

 private:
  std::map<std::string, std::string> kv_;
  std::set<std::string> seen_;
};

}  // namespace

RunConfig parse_config(const std::string& text, const std::vector<KeyValue>& overrides) {
  KeyMap kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(errc::bad_value, "line " + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      fail(errc::bad_value, "line " + std::to_string(lineno) + ": empty key or value");
    kv.put(key, value);
  }
  if (const char* env = std::getenv("CVPLES_OUT_DIR"); env && *env) kv.put("out_dir", env);
  for (const auto& [key, value] : overrides) {
    if (key.empty() || value.empty()) fail(errc::bad_value, "override with empty key or value");
    kv.put(key, value);
  }

  RunConfig cfg;

  if (!kv.has("case")) fail(errc::missing_required, "missing required key 'case'");
  const std::string case_name = kv.raw("case");
  if (case_name == "tgv") cfg.kind = CaseKind::tgv;
  else if (case_name == "helix") cfg.kind = CaseKind::helix;
  else fail(errc::bad_value, "key 'case': expected tgv or helix, got '" + case_name + "'");

  const bool has_n = kv.has("n");
  const bool has_axes = kv.has("nx") || kv.has("ny") || kv.has("nz");
  if (!has_n && !has_axes)
    fail(errc::missing_required, "missing required grid size: set 'n' or 'nx','ny','nz'");
  if (has_n && has_axes)
    fail(errc::bad_value, "set either 'n' or all of 'nx','ny','nz', not both");
  if (has_n) {
    cfg.nx = cfg.ny = cfg.nz = int(kv.integer("n"));
  } else {
    if (!(kv.has("nx") && kv.has("ny") && kv.has("nz")))
      fail(errc::missing_required, "anisotropic grids need all of 'nx','ny','nz'");
    cfg.nx = int(kv.integer("nx"));
    cfg.ny = int(kv.integer("ny"));
    cfg.nz = int(kv.integer("nz"));
  }
  if (cfg.nx < 8 || cfg.ny < 8 || cfg.nz < 8)
    fail(errc::bad_value, "grid needs at least 8 points per axis");

  cfg.t_end = cfg.kind == CaseKind::tgv ? 20.0 : 1.0;
  if (kv.has("t_end")) cfg.t_end = kv.number("t_end");
  if (!(cfg.t_end > 0.0)) fail(errc::bad_value, "key 't_end' must be positive");

  if (kv.has("cfl")) cfg.cfl = kv.number("cfl");
  if (!(cfg.cfl > 0.0)) fail(errc::bad_value, "key 'cfl' must be positive");
  if (kv.has("max_steps")) cfg.max_steps = kv.integer("max_steps");
  if (cfg.max_steps < 1) fail(errc::bad_value, "key 'max_steps' must be positive");
  if (kv.has("seed")) cfg.seed = std::uint64_t(kv.integer("seed"));

  if (kv.has("diag_every")) cfg.diag_every = kv.integer("diag_every");
  if (cfg.diag_every < 1) fail(errc::bad_value, "key 'diag_every' must be positive");
  if (kv.has("spectra_every")) cfg.spectra_every = kv.number("spectra_every");
  if (kv.has("snapshot_every")) cfg.snapshot_every = kv.number("snapshot_every");
  if (cfg.spectra_every < 0.0 || cfg.snapshot_every < 0.0)
    fail(errc::bad_value, "output cadences must be >= 0");
  if (kv.has("out_dir")) cfg.out_dir = kv.raw("out_dir");

  if (kv.has("gamma")) cfg.gamma = kv.number("gamma");
  if (!(cfg.gamma > 1.0)) fail(errc::bad_value, "key 'gamma' must exceed 1");
  if (kv.has("prandtl")) cfg.prandtl = kv.number("prandtl");
  if (kv.has("prandtl_t")) cfg.prandtl_t = kv.number("prandtl_t");
  if (!(cfg.prandtl > 0.0) || !(cfg.prandtl_t > 0.0))
    fail(errc::bad_value, "Prandtl numbers must be positive");

  if (kv.has("sgs")) cfg.sgs.kind = sgs_model_from_string(kv.raw("sgs"));
  if (kv.has("cs")) cfg.sgs.cs = kv.number("cs");
  if (!(cfg.sgs.cs > 0.0)) fail(errc::bad_value, "key 'cs' must be positive");
  if (kv.has("ck")) cfg.sgs.ck = kv.number("ck");
  if (!(cfg.sgs.ck > 0.0)) fail(errc::bad_value, "key 'ck' must be positive");
  if (kv.has("vreman_c")) cfg.sgs.vreman_c = kv.number("vreman_c");
  if (kv.has("eps_den")) cfg.sgs.eps_den = kv.number("eps_den");
  if (kv.has("mut_per_stage")) cfg.mut_per_stage = kv.flag("mut_per_stage");

  if (kv.has("cvp")) cfg.cvp_enabled = kv.flag("cvp");
  if (kv.has("test_filter")) cfg.test_filter = filter_kind_from_string(kv.raw("test_filter"));
  if (kv.has("filter_alpha")) cfg.filter_alpha = kv.number("filter_alpha");
  if (cfg.test_filter == FilterKind::impl6 && !(cfg.filter_alpha > -0.5 && cfg.filter_alpha < 0.5))
    fail(errc::bad_value, "key 'filter_alpha' must lie in (-0.5, 0.5)");
  if (kv.has("cvp_axes")) cfg.cvp_axes = AxisSet::parse(kv.raw("cvp_axes"));
  if (kv.has("sensor_field")) {
    const std::string v = kv.raw("sensor_field");
    if (v == "vorticity") cfg.sensor_source = SensorSource::vorticity;
    else if (v == "enstrophy") cfg.sensor_source = SensorSource::enstrophy;
    else fail(errc::bad_value, "key 'sensor_field': expected vorticity or enstrophy");
  }
  if (kv.has("sigma_eq")) {
    const std::string v = kv.raw("sigma_eq");
    if (v == "auto") {
      cfg.sigma_eq_choice = SigmaEqChoice::quadrature;
    } else if (v == "preset") {
      cfg.sigma_eq_choice = SigmaEqChoice::preset;
    } else {
      cfg.sigma_eq_choice = SigmaEqChoice::value;
      try {
        std::size_t pos = 0;
        cfg.sigma_eq_value = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
      } catch (const std::exception&) {
        fail(errc::bad_value, "key 'sigma_eq': expected auto, preset or a number, got '" + v + "'");
      }
      if (!(cfg.sigma_eq_value > 0.0 && cfg.sigma_eq_value < 1.0))
        fail(errc::bad_value, "key 'sigma_eq' must lie in (0, 1)");
    }
  }
  if (kv.has("interpolant")) {
    const std::string v = kv.raw("interpolant");
    if (v == "identity") cfg.interpolant = InterpolantMode::identity;
    else if (v == "int6") cfg.interpolant = InterpolantMode::int6;
    else fail(errc::bad_value, "key 'interpolant': expected identity or int6");
  }
  if (kv.has("enstrophy_floor")) {
    cfg.enstrophy_floor = kv.number("enstrophy_floor");
    if (!(cfg.enstrophy_floor > 0.0)) fail(errc::bad_value, "key 'enstrophy_floor' must be positive");
  }

  if (kv.has("solution_filter")) cfg.use_solution_filter = kv.flag("solution_filter");
  if (kv.has("filter_strength")) cfg.filter_strength = kv.number("filter_strength");
  if (cfg.use_solution_filter && !(cfg.filter_strength > 0.25 && cfg.filter_strength < 0.5))
    fail(errc::bad_value, "key 'filter_strength' must lie in (0.25, 0.5)");

  // case parameters
  if (kv.has("re")) cfg.tgv.re = kv.number("re");
  if (kv.has("mach")) cfg.tgv.mach = kv.number("mach");
  if (kv.has("tgv_l")) cfg.tgv.length = kv.number("tgv_l");
  if (kv.has("tgv_v0")) cfg.tgv.v0 = kv.number("tgv_v0");
  if (kv.has("tgv_rho0")) cfg.tgv.rho0 = kv.number("tgv_rho0");

  if (kv.has("helix_radius")) cfg.helix.radius = kv.number("helix_radius");
  if (kv.has("pitch_ratio")) cfg.helix.pitch_ratio = kv.number("pitch_ratio");
  if (kv.has("core_ratio")) cfg.helix.core_ratio = kv.number("core_ratio");
  if (kv.has("kernel_n")) cfg.helix.kernel_n = int(kv.integer("kernel_n"));
  if (kv.has("re_gamma")) cfg.helix.re_gamma = kv.number("re_gamma");
  if (kv.has("circulation")) cfg.helix.circulation = kv.number("circulation");
  if (kv.has("n_filaments")) cfg.helix.n_filaments = int(kv.integer("n_filaments"));
  if (kv.has("n_turns")) cfg.helix.n_turns = int(kv.integer("n_turns"));
  if (kv.has("box_lx")) cfg.helix.box_lx = kv.number("box_lx");
  if (kv.has("image_layers")) cfg.helix.image_layers = int(kv.integer("image_layers"));
  if (kv.has("mach_peak")) cfg.helix.mach_peak = kv.number("mach_peak");
  if (kv.has("helix_rho0")) cfg.helix.rho0 = kv.number("helix_rho0");
  if (kv.has("perturb_amp")) cfg.helix.perturb_amp = kv.number("perturb_amp");
  if (kv.has("theta_per_turn")) cfg.helix.theta_per_turn = int(kv.integer("theta_per_turn"));

  if (cfg.kind == CaseKind::tgv) cfg.tgv.validate();
  else cfg.helix.validate();

  kv.check_all_consumed();
  return cfg;
}

RunConfig parse_config_file(const std::string& path, const std::vector<KeyValue>& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::io_error, "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), overrides);
}

}  // namespace cvples
