#ifndef SHBDF3_H
#define SHBDF3_H

/* C interface to the implicit third-order backward-difference solver for
 * the Swift-Hohenberg equation on periodic boxes. Handles are opaque;
 * every fallible call either returns a status code or NULL and leaves a
 * message in sh_last_error(). */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
  SH_OK = 0,
  SH_ERR_CONFIG = 1, /* bad arguments or config text */
  SH_ERR_SOLVER = 2, /* an implicit solve failed to converge */
  SH_ERR_VERIFY = 3, /* a verification check failed */
  SH_ERR_IO = 4      /* file read or write failure */
};

/* Tau-threshold guards; advisory bits in sh_sim_guard_flags. */
enum {
  SH_GUARD_SOLVABILITY = 1u,
  SH_GUARD_ENERGY = 2u,
  SH_GUARD_CONVERGENCE = 4u
};

/* Message for the most recent failure on this thread; empty when the last
 * call succeeded. Valid until the next API call on the same thread. */
const char* sh_last_error(void);

/* Status of the most recent call on this thread; distinguishes failure
 * kinds for calls that report errors by returning NULL. */
int sh_last_status(void);

typedef struct sh_config sh_config;
typedef struct sh_sim sh_sim;
typedef struct sh_study sh_study;
typedef struct sh_verification sh_verification;
typedef struct sh_snapshot sh_snapshot;

/* ---- configuration ----
 * Text format: one "key = value" per line, '#' comments. */

sh_config* sh_config_parse(const char* text);
sh_config* sh_config_load(const char* path);
/* Canonical rendering; parsing it reproduces the config exactly. Free the
 * result with sh_string_free. */
char* sh_config_print(const sh_config* cfg);
uint64_t sh_config_digest(const sh_config* cfg);
int sh_config_has_study(const sh_config* cfg);
long long sh_config_steps(const sh_config* cfg);
/* Borrowed pointer, valid while cfg lives. */
const char* sh_config_output_dir(const sh_config* cfg);
void sh_config_free(sh_config* cfg);
void sh_string_free(char* text);

/* ---- simulation ---- */

typedef struct sh_energy_record {
  long long level;
  double time;
  double energy;
  double modified_energy;
  double l2;
  double l4;
  double linf;
  double bound_lhs;
  double bound_rhs;
  int newton_iters;
  double residual_l2;
} sh_energy_record;

sh_sim* sh_sim_create(const sh_config* cfg);
/* Refuses checkpoints written under a different config. */
sh_sim* sh_sim_resume(const sh_config* cfg, const char* checkpoint_path);
/* One accepted level: SH_OK or SH_ERR_SOLVER. */
int sh_sim_advance(sh_sim* sim);
/* All configured levels plus energy.csv, interval snapshots, checkpoints
 * and final.snap under the configured output directory. */
int sh_sim_run(sh_sim* sim);
long long sh_sim_level(const sh_sim* sim);
double sh_sim_time(const sh_sim* sim);
unsigned sh_sim_guard_flags(const sh_sim* sim);
const char* sh_sim_message(const sh_sim* sim);
size_t sh_sim_record_count(const sh_sim* sim);
int sh_sim_record(const sh_sim* sim, size_t index, sh_energy_record* out);
size_t sh_sim_field_size(const sh_sim* sim);
/* Copies the newest accepted level, row-major, into out. */
int sh_sim_field(const sh_sim* sim, double* out);
int sh_sim_write_snapshot(const sh_sim* sim, const char* path);
void sh_sim_free(sh_sim* sim);

/* ---- convergence studies ---- */

typedef struct sh_study_row {
  long long n;
  double tau;
  int points;
  double error_l2;
  double order; /* meaningful when has_order != 0 */
  int has_order;
} sh_study_row;

/* The config must carry a study block. */
sh_study* sh_study_run(const sh_config* cfg);
size_t sh_study_row_count(const sh_study* study);
int sh_study_get_row(const sh_study* study, size_t index, sh_study_row* out);
const char* sh_study_summary(const sh_study* study);
/* Columns N,tau,M,error_l2,order; free with sh_string_free. */
char* sh_study_csv(const sh_study* study);
void sh_study_free(sh_study* study);

/* ---- verification ---- */

sh_verification* sh_verify_run(void);
size_t sh_verify_count(const sh_verification* v);
const char* sh_verify_name(const sh_verification* v, size_t index);
int sh_verify_passed(const sh_verification* v, size_t index);
const char* sh_verify_detail(const sh_verification* v, size_t index);
int sh_verify_all_passed(const sh_verification* v);
/* Pass/fail table, one row per check; free with sh_string_free. */
char* sh_verify_render(const sh_verification* v);
void sh_verify_free(sh_verification* v);

/* ---- snapshots ---- */

sh_snapshot* sh_snapshot_open(const char* path);
int sh_snapshot_dim(const sh_snapshot* s);
int sh_snapshot_points(const sh_snapshot* s);
double sh_snapshot_length(const sh_snapshot* s);
double sh_snapshot_tau(const sh_snapshot* s);
long long sh_snapshot_level(const sh_snapshot* s);
double sh_snapshot_time(const sh_snapshot* s);
double sh_snapshot_g(const sh_snapshot* s);
double sh_snapshot_eps(const sh_snapshot* s);
/* Discrete free energy of the stored field under its own header params. */
double sh_snapshot_energy(const sh_snapshot* s);
double sh_snapshot_norm2(const sh_snapshot* s);
double sh_snapshot_max(const sh_snapshot* s);
/* Plain-text node/value listing for plotting. */
int sh_snapshot_export_text(const sh_snapshot* s, const char* path);
void sh_snapshot_free(sh_snapshot* s);

#ifdef __cplusplus
}
#endif

#endif
