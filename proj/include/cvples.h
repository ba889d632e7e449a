/* cvples - coherent-vorticity-preserving LES mini-solver, C API.
 *
 * All functions return cvples_status; 0 means success. On failure a
 * thread-local message is available through cvples_last_error(). Handles are
 * opaque and must be released with their destroy function.
 */
#ifndef CVPLES_H
#define CVPLES_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cvples_status {
  CVPLES_OK = 0,
  CVPLES_ERR_RUNTIME = 1, /* I/O and other runtime failures */
  CVPLES_ERR_CONFIG = 2,  /* configuration parse or validation errors */
  CVPLES_ERR_BLOWUP = 3,  /* solver blow-up (NaN or non-positive density/pressure) */
  CVPLES_ERR_INVALID = 4  /* invalid handle or argument */
} cvples_status;

typedef struct cvples_config cvples_config;

typedef struct cvples_run_stats {
  long steps;
  double sim_time;
  double step_seconds; /* wall time inside the step loop, I/O excluded */
  double final_energy;
  double mean_f_last;
  double sigma_eq;
  long filter_apps; /* test-filter applications during the run */
  int blew_up;
} cvples_run_stats;

const char* cvples_version(void);

/* Thread-local message describing the most recent failure. */
const char* cvples_last_error(void);

/* Loads a key=value config file. Pass NULL for an empty config (every
 * required key must then come through cvples_config_set). */
cvples_status cvples_config_load(const char* path_or_null, cvples_config** out);

/* Sets or overrides one key. Validation happens at run time. */
cvples_status cvples_config_set(cvples_config* cfg, const char* key, const char* value);

/* Reads back a key exactly as currently stored; returns CVPLES_ERR_INVALID
 * when the key was never set. */
cvples_status cvples_config_get(const cvples_config* cfg, const char* key, char* buf, int buflen);

void cvples_config_destroy(cvples_config* cfg);

/* Validates the config and runs the case to t_end. Returns CVPLES_ERR_BLOWUP
 * when the solver blows up (diagnostics are flushed first). stats may be NULL. */
cvples_status cvples_run(const cvples_config* cfg, cvples_run_stats* stats);

/* Equilibrium sensor threshold for a test filter ("impl6", "expl4", "gauss").
 * alpha only matters for impl6; pass a nonzero with_int6 to include the
 * midpoint-interpolant correction in the quadrature. */
cvples_status cvples_sigma_eq(const char* filter, double alpha, int with_int6, double* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CVPLES_H */
