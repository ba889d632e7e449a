#include "cvples.h"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "cvples/config.hpp"
#include "cvples/error.hpp"
#include "cvples/run.hpp"

namespace {

thread_local std::string g_last_error;

cvples_status status_from(const cvples::Error& e) {
  using cvples::errc;
  switch (e.kind()) {
    case errc::solver_blow_up:
    case errc::non_positive_density:
    case errc::non_positive_pressure:
      return CVPLES_ERR_BLOWUP;
    case errc::unknown_key:
    case errc::bad_value:
    case errc::missing_required:
    case errc::bad_alpha:
    case errc::invalid_argument:
    case errc::domain_error:
      return CVPLES_ERR_CONFIG;
    default:
      return CVPLES_ERR_RUNTIME;
  }
}

template <class Fn>
cvples_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const cvples::Error& e) {
    g_last_error = e.what();
    return status_from(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CVPLES_ERR_RUNTIME;
  } catch (...) {
    g_last_error = "unknown error";
    return CVPLES_ERR_RUNTIME;
  }
}

}  // namespace

struct cvples_config {
  std::string file_text;
  std::vector<cvples::KeyValue> overrides;

  cvples::RunConfig build() const { return cvples::parse_config(file_text, overrides); }
};

extern "C" {

const char* cvples_version(void) { return "cvples 1.0.0"; }

const char* cvples_last_error(void) { return g_last_error.c_str(); }

cvples_status cvples_config_load(const char* path_or_null, cvples_config** out) {
  if (!out) {
    g_last_error = "null output pointer";
    return CVPLES_ERR_INVALID;
  }
  *out = nullptr;
  return guarded([&]() -> cvples_status {
    auto cfg = std::make_unique<cvples_config>();
    if (path_or_null) {
      std::ifstream in(path_or_null, std::ios::binary);
      if (!in) {
        g_last_error = std::string("cannot open config file '") + path_or_null + "'";
        return CVPLES_ERR_CONFIG;
      }
      std::ostringstream ss;
      ss << in.rdbuf();
      cfg->file_text = ss.str();
    }
    *out = cfg.release();
    return CVPLES_OK;
  });
}

cvples_status cvples_config_set(cvples_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value || !*key || !*value) {
    g_last_error = "config_set needs a handle and a non-empty key and value";
    return CVPLES_ERR_INVALID;
  }
  cfg->overrides.emplace_back(key, value);
  return CVPLES_OK;
}

cvples_status cvples_config_get(const cvples_config* cfg, const char* key, char* buf, int buflen) {
  if (!cfg || !key || !buf || buflen <= 0) {
    g_last_error = "config_get needs a handle, key and buffer";
    return CVPLES_ERR_INVALID;
  }
  // last override wins; fall back to the raw file text
  for (auto it = cfg->overrides.rbegin(); it != cfg->overrides.rend(); ++it) {
    if (it->first == key) {
      std::snprintf(buf, std::size_t(buflen), "%s", it->second.c_str());
      return CVPLES_OK;
    }
  }
  std::istringstream in(cfg->file_text);
  std::string line, found;
  bool any = false;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r\n");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t\r\n");
      return s.substr(b, e - b + 1);
    };
    if (trim(line.substr(0, eq)) == key) {
      found = trim(line.substr(eq + 1));
      any = true;
    }
  }
  if (!any) {
    g_last_error = std::string("key '") + key + "' is not set";
    return CVPLES_ERR_INVALID;
  }
  std::snprintf(buf, std::size_t(buflen), "%s", found.c_str());
  return CVPLES_OK;
}

void cvples_config_destroy(cvples_config* cfg) { delete cfg; }

cvples_status cvples_run(const cvples_config* cfg, cvples_run_stats* stats) {
  if (!cfg) {
    g_last_error = "null config handle";
    return CVPLES_ERR_INVALID;
  }
  return guarded([&]() -> cvples_status {
    const cvples::RunConfig rc = cfg->build();
    const cvples::RunStats s = cvples::run(rc);
    if (stats) {
      stats->steps = s.steps;
      stats->sim_time = s.sim_time;
      stats->step_seconds = s.step_seconds;
      stats->final_energy = s.final_energy;
      stats->mean_f_last = s.mean_f_last;
      stats->sigma_eq = s.sigma_eq;
      stats->filter_apps = s.filter_apps;
      stats->blew_up = s.blew_up ? 1 : 0;
    }
    if (s.blew_up) {
      g_last_error = s.blow_up_reason;
      return CVPLES_ERR_BLOWUP;
    }
    return CVPLES_OK;
  });
}

cvples_status cvples_sigma_eq(const char* filter, double alpha, int with_int6, double* out) {
  if (!filter || !out) {
    g_last_error = "sigma_eq needs a filter name and output pointer";
    return CVPLES_ERR_INVALID;
  }
  return guarded([&]() -> cvples_status {
    const cvples::FilterKind kind = cvples::filter_kind_from_string(filter);
    const cvples::TestFilterSpec spec = cvples::TestFilterSpec::make(kind, alpha);
    *out = cvples::sigma_eq_quadrature(
        spec, with_int6 ? cvples::InterpolantMode::int6 : cvples::InterpolantMode::identity);
    return CVPLES_OK;
  });
}

}  // extern "C"
