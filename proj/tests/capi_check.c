/* Exercises the C interface end to end through the shared library only. */

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "shbdf3.h"

static int failures = 0;

#define CHECK(cond)                                                      \
  do {                                                                   \
    if (!(cond)) {                                                       \
      ++failures;                                                        \
      fprintf(stderr, "FAIL %s:%d: %s\n", __FILE__, __LINE__, #cond);    \
    }                                                                    \
  } while (0)

static const char* base_config =
    "dim = 2\n"
    "L = 100\n"
    "M = 24\n"
    "tau = 0.1\n"
    "steps = 6\n"
    "g = 0.5\n"
    "eps = 0.5\n"
    "ic = example2\n"
    "output_dir = capi_out\n";

static void check_config_roundtrip(void) {
  sh_config* cfg = sh_config_parse(base_config);
  CHECK(cfg != NULL);
  CHECK(sh_config_steps(cfg) == 6);
  CHECK(!sh_config_has_study(cfg));
  CHECK(sh_config_digest(cfg) != 0);
  CHECK(strcmp(sh_config_output_dir(cfg), "capi_out") == 0);

  char* printed = sh_config_print(cfg);
  CHECK(printed != NULL);
  sh_config* again = sh_config_parse(printed);
  CHECK(again != NULL);
  CHECK(sh_config_digest(again) == sh_config_digest(cfg));
  sh_string_free(printed);
  sh_config_free(again);
  sh_config_free(cfg);

  CHECK(sh_config_parse("tau = nonsense\n") == NULL);
  CHECK(strlen(sh_last_error()) > 0);
  CHECK(sh_last_status() == SH_ERR_CONFIG);
  CHECK(sh_config_load("no_such_config.cfg") == NULL);
  CHECK(sh_last_status() == SH_ERR_IO);
}

static void check_simulation(void) {
  sh_config* cfg = sh_config_parse(base_config);
  CHECK(cfg != NULL);
  sh_sim* sim = sh_sim_create(cfg);
  CHECK(sim != NULL);
  CHECK(sh_sim_level(sim) == 0);

  CHECK(sh_sim_advance(sim) == SH_OK);
  CHECK(sh_sim_advance(sim) == SH_OK);
  CHECK(sh_sim_level(sim) == 2);
  CHECK(fabs(sh_sim_time(sim) - 0.2) < 1e-15);
  CHECK(sh_sim_record_count(sim) == 3);

  sh_energy_record rec;
  CHECK(sh_sim_record(sim, 2, &rec) == SH_OK);
  CHECK(rec.level == 2);
  CHECK(rec.newton_iters >= 1);
  CHECK(rec.residual_l2 >= 0.0);
  sh_energy_record first;
  CHECK(sh_sim_record(sim, 0, &first) == SH_OK);
  CHECK(rec.modified_energy <= first.modified_energy + 1e-10);
  CHECK(sh_sim_record(sim, 99, &rec) != SH_OK);

  size_t n = sh_sim_field_size(sim);
  CHECK(n == 24u * 24u);
  double* field = (double*)malloc(n * sizeof(double));
  CHECK(sh_sim_field(sim, field) == SH_OK);
  double peak = 0.0;
  for (size_t i = 0; i < n; ++i)
    if (fabs(field[i]) > peak) peak = fabs(field[i]);
  CHECK(peak > 0.0);

  CHECK(sh_sim_write_snapshot(sim, "capi_state.snap") == SH_OK);
  sh_snapshot* snap = sh_snapshot_open("capi_state.snap");
  CHECK(snap != NULL);
  CHECK(sh_snapshot_dim(snap) == 2);
  CHECK(sh_snapshot_points(snap) == 24);
  CHECK(sh_snapshot_level(snap) == 2);
  CHECK(fabs(sh_snapshot_length(snap) - 100.0) < 1e-12);
  CHECK(fabs(sh_snapshot_g(snap) - 0.5) < 1e-15);
  CHECK(fabs(sh_snapshot_max(snap) - peak) < 1e-15);

  /* recomputed energy must agree with the logged record */
  sh_energy_record at2;
  CHECK(sh_sim_record(sim, 2, &at2) == SH_OK);
  CHECK(fabs(sh_snapshot_energy(snap) - at2.energy) <=
        1e-12 * (1.0 + fabs(at2.energy)));

  CHECK(sh_snapshot_export_text(snap, "capi_state.txt") == SH_OK);
  FILE* txt = fopen("capi_state.txt", "r");
  CHECK(txt != NULL);
  if (txt) {
    double x, y, v;
    CHECK(fscanf(txt, "%lf %lf %lf", &x, &y, &v) == 3);
    CHECK(x == 0.0 && y == 0.0);
    fclose(txt);
  }
  sh_snapshot_free(snap);
  CHECK(sh_snapshot_open("capi_state.txt") == NULL);

  free(field);
  sh_sim_free(sim);
  sh_config_free(cfg);
}

static void check_run_and_resume(void) {
  sh_config* cfg = sh_config_parse(
      "dim = 2\nL = 100\nM = 16\ntau = 0.1\nsteps = 4\ng = 0.5\neps = 0.5\n"
      "ic = example2\ncheckpoint_every = 2\noutput_dir = capi_run\n");
  CHECK(cfg != NULL);
  sh_sim* sim = sh_sim_create(cfg);
  CHECK(sim != NULL);
  CHECK(sh_sim_run(sim) == SH_OK);
  CHECK(sh_sim_level(sim) == 4);

  sh_sim* resumed = sh_sim_resume(cfg, "capi_run/checkpoint.ckpt");
  CHECK(resumed != NULL);
  if (resumed) {
    while (sh_sim_level(resumed) < 4)
      CHECK(sh_sim_advance(resumed) == SH_OK);
    size_t n = sh_sim_field_size(sim);
    double* a = (double*)malloc(n * sizeof(double));
    double* b = (double*)malloc(n * sizeof(double));
    CHECK(sh_sim_field(sim, a) == SH_OK);
    CHECK(sh_sim_field(resumed, b) == SH_OK);
    CHECK(memcmp(a, b, n * sizeof(double)) == 0);
    free(a);
    free(b);
    sh_sim_free(resumed);
  }

  /* altered parameters must be refused */
  sh_config* drifted = sh_config_parse(
      "dim = 2\nL = 100\nM = 16\ntau = 0.1\nsteps = 4\ng = 0.5\neps = 0.45\n"
      "ic = example2\ncheckpoint_every = 2\noutput_dir = capi_run\n");
  CHECK(drifted != NULL);
  CHECK(sh_sim_resume(drifted, "capi_run/checkpoint.ckpt") == NULL);
  CHECK(strstr(sh_last_error(), "refusing") != NULL);
  sh_config_free(drifted);

  sh_sim_free(sim);
  sh_config_free(cfg);
}

static void check_study(void) {
  sh_config* cfg = sh_config_parse(
      "dim = 2\nL = 6.283185307179586\nM = 16\ng = 1\neps = 0.25\n"
      "ic = example1\nforcing = on\nstudy = temporal\nns = 2,4\nT = 0.5\n");
  CHECK(cfg != NULL);
  CHECK(sh_config_has_study(cfg));
  sh_study* study = sh_study_run(cfg);
  CHECK(study != NULL);
  CHECK(sh_study_row_count(study) == 2);

  sh_study_row row;
  CHECK(sh_study_get_row(study, 0, &row) == SH_OK);
  CHECK(row.n == 2 && !row.has_order && row.error_l2 > 0.0);
  CHECK(sh_study_get_row(study, 1, &row) == SH_OK);
  CHECK(row.n == 4 && row.has_order);

  CHECK(strlen(sh_study_summary(study)) > 0);
  char* csv = sh_study_csv(study);
  CHECK(csv != NULL);
  CHECK(strncmp(csv, "N,tau,M,error_l2,order\n", 23) == 0);
  sh_string_free(csv);
  sh_study_free(study);

  /* a study config cannot drive a plain simulation */
  CHECK(sh_sim_create(cfg) == NULL);
  sh_config_free(cfg);
}

static void check_verification(void) {
  sh_verification* v = sh_verify_run();
  CHECK(v != NULL);
  CHECK(sh_verify_all_passed(v));
  CHECK(sh_verify_count(v) >= 15);
  size_t i;
  for (i = 0; i < sh_verify_count(v); ++i) {
    CHECK(sh_verify_passed(v, i));
    CHECK(strlen(sh_verify_name(v, i)) > 0);
    CHECK(strlen(sh_verify_detail(v, i)) > 0);
  }
  char* table = sh_verify_render(v);
  CHECK(table != NULL);
  CHECK(strstr(table, "all checks passed") != NULL);
  sh_string_free(table);
  sh_verify_free(v);
}

int main(void) {
  check_config_roundtrip();
  check_simulation();
  check_run_and_resume();
  check_study();
  check_verification();
  if (failures) {
    fprintf(stderr, "%d check(s) failed\n", failures);
    return 1;
  }
  printf("c interface checks passed\n");
  return 0;
}
