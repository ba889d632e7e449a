/* cvples command-line front end. Links the shared library through the C API
 * only.
 *
 * Usage:
 *   cvples run <config> [--key=value ...]
 *   cvples sigma-eq --filter=<impl6|expl4|gauss> [--alpha=<v>] [--int6]
 *   cvples overhead <configA> <configB> ...
 *   cvples --version
 *
 * Exit codes: 0 ok, 2 config error, 3 solver blow-up, 1 other failures.
 */
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "cvples.h"

static void usage(FILE* out) {
  fprintf(out,
          "usage:\n"
          "  cvples run <config> [--key=value ...]\n"
          "  cvples sigma-eq --filter=<impl6|expl4|gauss> [--alpha=<v>] [--int6]\n"
          "  cvples overhead <configA> <configB> ...\n"
          "  cvples --version\n");
}

static int exit_code(cvples_status st) {
  switch (st) {
    case CVPLES_OK: return 0;
    case CVPLES_ERR_CONFIG: return 2;
    case CVPLES_ERR_BLOWUP: return 3;
    default: return 1;
  }
}

/* Splits "--key=value" into key/value; returns 0 on malformed flags. */
static int split_flag(const char* arg, char* key, size_t keylen, const char** value) {
  const char* eq;
  size_t n;
  if (strncmp(arg, "--", 2) != 0) return 0;
  eq = strchr(arg + 2, '=');
  if (!eq || eq == arg + 2 || !eq[1]) return 0;
  n = (size_t)(eq - (arg + 2));
  if (n >= keylen) return 0;
  memcpy(key, arg + 2, n);
  key[n] = '\0';
  *value = eq + 1;
  return 1;
}

static int cmd_run(int argc, char** argv) {
  cvples_config* cfg = NULL;
  cvples_run_stats stats;
  cvples_status st;
  int i;

  if (argc < 1) {
    fprintf(stderr, "run: missing config file\n");
    return 2;
  }
  st = cvples_config_load(argv[0], &cfg);
  if (st != CVPLES_OK) {
    fprintf(stderr, "error: %s\n", cvples_last_error());
    return exit_code(st);
  }
  for (i = 1; i < argc; ++i) {
    char key[128];
    const char* value;
    if (!split_flag(argv[i], key, sizeof(key), &value)) {
      fprintf(stderr, "run: bad override '%s' (expected --key=value)\n", argv[i]);
      cvples_config_destroy(cfg);
      return 2;
    }
    st = cvples_config_set(cfg, key, value);
    if (st != CVPLES_OK) {
      fprintf(stderr, "error: %s\n", cvples_last_error());
      cvples_config_destroy(cfg);
      return exit_code(st);
    }
  }

  memset(&stats, 0, sizeof(stats));
  st = cvples_run(cfg, &stats);
  cvples_config_destroy(cfg);
  if (st == CVPLES_OK) {
    fprintf(stderr, "completed: %ld steps to t=%.6g (%.3fs in step loop)\n", stats.steps,
            stats.sim_time, stats.step_seconds);
    return 0;
  }
  fprintf(stderr, "error: %s\n", cvples_last_error());
  if (st == CVPLES_ERR_BLOWUP)
    fprintf(stderr, "solver blow-up after %ld steps at t=%.6g\n", stats.steps, stats.sim_time);
  return exit_code(st);
}

static int cmd_sigma_eq(int argc, char** argv) {
  const char* filter = NULL;
  double alpha = -0.4;
  int with_int6 = 0;
  double value;
  cvples_status st;
  int i;

  for (i = 0; i < argc; ++i) {
    char key[128];
    const char* val;
    if (strcmp(argv[i], "--int6") == 0) {
      with_int6 = 1;
    } else if (split_flag(argv[i], key, sizeof(key), &val)) {
      if (strcmp(key, "filter") == 0) {
        filter = val;
      } else if (strcmp(key, "alpha") == 0) {
        alpha = atof(val);
      } else {
        fprintf(stderr, "sigma-eq: unknown flag '--%s'\n", key);
        return 2;
      }
    } else {
      fprintf(stderr, "sigma-eq: bad argument '%s'\n", argv[i]);
      return 2;
    }
  }
  if (!filter) {
    fprintf(stderr, "sigma-eq: missing --filter=<impl6|expl4|gauss>\n");
    return 2;
  }
  st = cvples_sigma_eq(filter, alpha, with_int6, &value);
  if (st != CVPLES_OK) {
    fprintf(stderr, "error: %s\n", cvples_last_error());
    return exit_code(st);
  }
  printf("%.10g\n", value);
  return 0;
}

/* A config is the no-model baseline when 'sgs' is unset or none and 'cvp'
 * is unset or off. */
static int is_no_model(const cvples_config* cfg) {
  char buf[64];
  if (cvples_config_get(cfg, "sgs", buf, sizeof(buf)) == CVPLES_OK && strcmp(buf, "none") != 0)
    return 0;
  if (cvples_config_get(cfg, "cvp", buf, sizeof(buf)) == CVPLES_OK && strcmp(buf, "off") != 0 &&
      strcmp(buf, "false") != 0 && strcmp(buf, "0") != 0)
    return 0;
  return 1;
}

static int cmd_overhead(int argc, char** argv) {
  double* per_step = NULL;
  long* steps = NULL;
  int baseline = -1, i, rc = 0;

  if (argc < 2) {
    fprintf(stderr, "overhead: need at least two configs\n");
    return 2;
  }
  per_step = (double*)calloc((size_t)argc, sizeof(double));
  steps = (long*)calloc((size_t)argc, sizeof(long));
  if (!per_step || !steps) {
    free(per_step);
    free(steps);
    return 1;
  }

  for (i = 0; i < argc; ++i) {
    cvples_config* cfg = NULL;
    cvples_run_stats stats;
    cvples_status st = cvples_config_load(argv[i], &cfg);
    if (st == CVPLES_OK) {
      if (baseline < 0 && is_no_model(cfg)) baseline = i;
      memset(&stats, 0, sizeof(stats));
      st = cvples_run(cfg, &stats);
      cvples_config_destroy(cfg);
    }
    if (st != CVPLES_OK) {
      fprintf(stderr, "error in '%s': %s\n", argv[i], cvples_last_error());
      rc = exit_code(st);
      goto done;
    }
    steps[i] = stats.steps;
    per_step[i] = stats.steps > 0 ? stats.step_seconds / (double)stats.steps : 0.0;
  }
  if (baseline < 0) baseline = 0; /* no no-model config given: first is the reference */

  printf("# config steps s_per_step relative overhead\n");
  for (i = 0; i < argc; ++i) {
    const double rel = per_step[baseline] > 0.0 ? per_step[i] / per_step[baseline] : 0.0;
    printf("%s %ld %.6e %.3f %+.1f%%\n", argv[i], steps[i], per_step[i], rel,
           100.0 * (rel - 1.0));
  }

done:
  free(per_step);
  free(steps);
  return rc;
}

int main(int argc, char** argv) {
  if (argc < 2) {
    usage(stderr);
    return 2;
  }
  if (strcmp(argv[1], "--version") == 0) {
    printf("%s\n", cvples_version());
    return 0;
  }
  if (strcmp(argv[1], "--help") == 0 || strcmp(argv[1], "help") == 0) {
    usage(stdout);
    return 0;
  }
  if (strcmp(argv[1], "run") == 0) return cmd_run(argc - 2, argv + 2);
  if (strcmp(argv[1], "sigma-eq") == 0) return cmd_sigma_eq(argc - 2, argv + 2);
  if (strcmp(argv[1], "overhead") == 0) return cmd_overhead(argc - 2, argv + 2);
  fprintf(stderr, "unknown command '%s'\n", argv[1]);
  usage(stderr);
  return 2;
}
