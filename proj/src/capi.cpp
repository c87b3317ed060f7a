#include "shbdf3.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <utility>

#include "sh/config.hpp"
#include "sh/errors.hpp"
#include "sh/harness.hpp"
#include "sh/sim.hpp"
#include "sh/snapshot.hpp"
#include "sh/verify.hpp"

struct sh_config {
  sh::RunConfig cfg;
};

struct sh_sim {
  sh::Simulation sim;
};

struct sh_study {
  sh::StudyResult result;
};

struct sh_verification {
  sh::VerificationReport report;
};

struct sh_snapshot {
  sh::Snapshot snap;
};

namespace {

thread_local std::string g_last_error;
thread_local int g_last_status = SH_OK;

void clear_error() {
  g_last_error.clear();
  g_last_status = SH_OK;
}

int classify(const std::exception& e) {
  g_last_error = e.what();
  if (dynamic_cast<const sh::IoError*>(&e))
    g_last_status = SH_ERR_IO;
  else if (dynamic_cast<const sh::SolverError*>(&e))
    g_last_status = SH_ERR_SOLVER;
  else
    g_last_status = SH_ERR_CONFIG;
  return g_last_status;
}

template <typename F>
auto guarded(F&& f) -> decltype(f()) {
  clear_error();
  try {
    return f();
  } catch (const std::exception& e) {
    classify(e);
    return nullptr;
  }
}

template <typename F>
int guarded_status(F&& f) {
  clear_error();
  try {
    return f();
  } catch (const std::exception& e) {
    return classify(e);
  }
}

char* copy_out(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* sh_last_error(void) { return g_last_error.c_str(); }

int sh_last_status(void) { return g_last_status; }

sh_config* sh_config_parse(const char* text) {
  return guarded([&]() -> sh_config* {
    if (!text) throw std::invalid_argument("null config text");
    return new sh_config{sh::parse_config(text)};
  });
}

sh_config* sh_config_load(const char* path) {
  return guarded([&]() -> sh_config* {
    if (!path) throw std::invalid_argument("null config path");
    return new sh_config{sh::load_config(path)};
  });
}

char* sh_config_print(const sh_config* cfg) {
  return guarded([&]() -> char* {
    if (!cfg) throw std::invalid_argument("null config handle");
    return copy_out(sh::print_config(cfg->cfg));
  });
}

uint64_t sh_config_digest(const sh_config* cfg) {
  return cfg ? sh::config_digest(cfg->cfg) : 0;
}

int sh_config_has_study(const sh_config* cfg) {
  return cfg && cfg->cfg.study.has_value() ? 1 : 0;
}

long long sh_config_steps(const sh_config* cfg) {
  return cfg ? cfg->cfg.steps : 0;
}

const char* sh_config_output_dir(const sh_config* cfg) {
  return cfg ? cfg->cfg.output_dir.c_str() : "";
}

void sh_config_free(sh_config* cfg) { delete cfg; }

void sh_string_free(char* text) { std::free(text); }

sh_sim* sh_sim_create(const sh_config* cfg) {
  return guarded([&]() -> sh_sim* {
    if (!cfg) throw std::invalid_argument("null config handle");
    return new sh_sim{sh::Simulation(cfg->cfg)};
  });
}

sh_sim* sh_sim_resume(const sh_config* cfg, const char* checkpoint_path) {
  return guarded([&]() -> sh_sim* {
    if (!cfg || !checkpoint_path)
      throw std::invalid_argument("null config or checkpoint path");
    return new sh_sim{sh::Simulation(cfg->cfg, checkpoint_path)};
  });
}

int sh_sim_advance(sh_sim* sim) {
  return guarded_status([&]() -> int {
    if (!sim) throw std::invalid_argument("null simulation handle");
    if (sim->sim.advance()) return SH_OK;
    g_last_error = sim->sim.report().message;
    g_last_status = SH_ERR_SOLVER;
    return SH_ERR_SOLVER;
  });
}

int sh_sim_run(sh_sim* sim) {
  return guarded_status([&]() -> int {
    if (!sim) throw std::invalid_argument("null simulation handle");
    if (sim->sim.run()) return SH_OK;
    g_last_error = sim->sim.report().message;
    g_last_status = SH_ERR_SOLVER;
    return SH_ERR_SOLVER;
  });
}

long long sh_sim_level(const sh_sim* sim) {
  return sim ? sim->sim.level() : -1;
}

double sh_sim_time(const sh_sim* sim) { return sim ? sim->sim.time() : 0.0; }

unsigned sh_sim_guard_flags(const sh_sim* sim) {
  return sim ? sim->sim.report().guard_flags : 0;
}

const char* sh_sim_message(const sh_sim* sim) {
  return sim ? sim->sim.report().message.c_str() : "";
}

size_t sh_sim_record_count(const sh_sim* sim) {
  return sim ? sim->sim.records().size() : 0;
}

int sh_sim_record(const sh_sim* sim, size_t index, sh_energy_record* out) {
  return guarded_status([&]() -> int {
    if (!sim || !out) throw std::invalid_argument("null handle or out slot");
    const auto& recs = sim->sim.records();
    if (index >= recs.size())
      throw std::invalid_argument("record index out of range");
    const sh::EnergyRecord& r = recs[index];
    *out = {r.level,     r.time, r.energy, r.modified_energy, r.l2,
            r.l4,        r.linf, r.bound_lhs, r.bound_rhs,
            r.newton_iters, r.residual_l2};
    return SH_OK;
  });
}

size_t sh_sim_field_size(const sh_sim* sim) {
  return sim ? sim->sim.state().size() : 0;
}

int sh_sim_field(const sh_sim* sim, double* out) {
  return guarded_status([&]() -> int {
    if (!sim || !out) throw std::invalid_argument("null handle or out buffer");
    const sh::GridField& f = sim->sim.state();
    std::memcpy(out, f.data(), f.size() * sizeof(double));
    return SH_OK;
  });
}

int sh_sim_write_snapshot(const sh_sim* sim, const char* path) {
  return guarded_status([&]() -> int {
    if (!sim || !path) throw std::invalid_argument("null handle or path");
    sim->sim.write_state(path);
    return SH_OK;
  });
}

void sh_sim_free(sh_sim* sim) { delete sim; }

sh_study* sh_study_run(const sh_config* cfg) {
  return guarded([&]() -> sh_study* {
    if (!cfg) throw std::invalid_argument("null config handle");
    return new sh_study{sh::run_study(cfg->cfg)};
  });
}

size_t sh_study_row_count(const sh_study* study) {
  return study ? study->result.rows.size() : 0;
}

int sh_study_get_row(const sh_study* study, size_t index, sh_study_row* out) {
  return guarded_status([&]() -> int {
    if (!study || !out) throw std::invalid_argument("null handle or out slot");
    if (index >= study->result.rows.size())
      throw std::invalid_argument("study row index out of range");
    const sh::ConvergenceRow& r = study->result.rows[index];
    *out = {r.n, r.tau, r.points, r.error_l2, r.order, r.has_order ? 1 : 0};
    return SH_OK;
  });
}

const char* sh_study_summary(const sh_study* study) {
  return study ? study->result.summary.c_str() : "";
}

char* sh_study_csv(const sh_study* study) {
  return guarded([&]() -> char* {
    if (!study) throw std::invalid_argument("null study handle");
    return copy_out(sh::convergence_csv(study->result.rows));
  });
}

void sh_study_free(sh_study* study) { delete study; }

sh_verification* sh_verify_run(void) {
  return guarded(
      []() -> sh_verification* { return new sh_verification{sh::run_verification()}; });
}

size_t sh_verify_count(const sh_verification* v) {
  return v ? v->report.rows.size() : 0;
}

const char* sh_verify_name(const sh_verification* v, size_t index) {
  if (!v || index >= v->report.rows.size()) return "";
  return v->report.rows[index].name.c_str();
}

int sh_verify_passed(const sh_verification* v, size_t index) {
  if (!v || index >= v->report.rows.size()) return 0;
  return v->report.rows[index].pass ? 1 : 0;
}

const char* sh_verify_detail(const sh_verification* v, size_t index) {
  if (!v || index >= v->report.rows.size()) return "";
  return v->report.rows[index].detail.c_str();
}

int sh_verify_all_passed(const sh_verification* v) {
  return v && v->report.all_passed ? 1 : 0;
}

char* sh_verify_render(const sh_verification* v) {
  return guarded([&]() -> char* {
    if (!v) throw std::invalid_argument("null verification handle");
    return copy_out(sh::render_verification(v->report));
  });
}

void sh_verify_free(sh_verification* v) { delete v; }

sh_snapshot* sh_snapshot_open(const char* path) {
  return guarded([&]() -> sh_snapshot* {
    if (!path) throw std::invalid_argument("null snapshot path");
    return new sh_snapshot{sh::read_snapshot(path)};
  });
}

int sh_snapshot_dim(const sh_snapshot* s) {
  return s ? s->snap.header.dim : 0;
}

int sh_snapshot_points(const sh_snapshot* s) {
  return s ? s->snap.header.points : 0;
}

double sh_snapshot_length(const sh_snapshot* s) {
  return s ? s->snap.header.length : 0.0;
}

double sh_snapshot_tau(const sh_snapshot* s) {
  return s ? s->snap.header.tau : 0.0;
}

long long sh_snapshot_level(const sh_snapshot* s) {
  return s ? s->snap.header.level : 0;
}

double sh_snapshot_time(const sh_snapshot* s) {
  return s ? s->snap.header.time : 0.0;
}

double sh_snapshot_g(const sh_snapshot* s) {
  return s ? s->snap.header.params.g : 0.0;
}

double sh_snapshot_eps(const sh_snapshot* s) {
  return s ? s->snap.header.params.eps : 0.0;
}

double sh_snapshot_energy(const sh_snapshot* s) {
  return s ? sh::discrete_energy(s->snap.field, s->snap.header.params) : 0.0;
}

double sh_snapshot_norm2(const sh_snapshot* s) {
  return s ? sh::field_norm(s->snap.field, sh::Norm::l2) : 0.0;
}

double sh_snapshot_max(const sh_snapshot* s) {
  return s ? sh::field_norm(s->snap.field, sh::Norm::linf) : 0.0;
}

int sh_snapshot_export_text(const sh_snapshot* s, const char* path) {
  return guarded_status([&]() -> int {
    if (!s || !path) throw std::invalid_argument("null handle or path");
    sh::write_snapshot_text(path, s->snap);
    return SH_OK;
  });
}

void sh_snapshot_free(sh_snapshot* s) { delete s; }

}  // extern "C"
