// Command-line front end. All solver work happens behind the shared
// library's C interface; this file only shuffles arguments and files.

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "shbdf3.h"

namespace {

int fail(const std::string& what) {
  std::fprintf(stderr, "error: %s\n", what.c_str());
  return 1;
}

// Exit codes: 0 success, 1 usage or IO, 2 solver failure, 3 failed checks.
int exit_code_for(int status) { return status == SH_ERR_SOLVER ? 2 : 1; }

void print_guard_warnings(unsigned flags) {
  if (flags & SH_GUARD_SOLVABILITY)
    std::fprintf(stderr,
                 "warning: tau exceeds the unique-solvability threshold\n");
  if (flags & SH_GUARD_ENERGY)
    std::fprintf(stderr, "warning: tau exceeds the energy-law threshold\n");
  if (flags & SH_GUARD_CONVERGENCE)
    std::fprintf(stderr,
                 "warning: tau exceeds the convergence threshold\n");
}

int run_simulate(const std::string& config_path, const std::string& resume) {
  sh_config* cfg = sh_config_load(config_path.c_str());
  if (!cfg) return fail(sh_last_error());
  if (sh_config_has_study(cfg)) {
    sh_config_free(cfg);
    return fail("config carries a study block; use `converge`");
  }
  sh_sim* sim = resume.empty() ? sh_sim_create(cfg)
                               : sh_sim_resume(cfg, resume.c_str());
  if (!sim) {
    const int code = exit_code_for(sh_last_status());
    std::fprintf(stderr, "error: %s\n", sh_last_error());
    sh_config_free(cfg);
    return code;
  }
  int code = 0;
  if (sh_sim_run(sim) == SH_OK) {
    sh_energy_record last = {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0};
    const size_t n = sh_sim_record_count(sim);
    if (n > 0) sh_sim_record(sim, n - 1, &last);
    std::printf("level %lld  t = %g  E = %.10g  E_mod = %.10g\n",
                sh_sim_level(sim), sh_sim_time(sim), last.energy,
                last.modified_energy);
    std::printf("outputs in %s\n", sh_config_output_dir(cfg));
    print_guard_warnings(sh_sim_guard_flags(sim));
  } else {
    std::fprintf(stderr, "error: %s\n", sh_last_error());
    code = exit_code_for(sh_last_status());
  }
  sh_sim_free(sim);
  sh_config_free(cfg);
  return code;
}

int run_converge(const std::string& config_path) {
  sh_config* cfg = sh_config_load(config_path.c_str());
  if (!cfg) return fail(sh_last_error());
  if (!sh_config_has_study(cfg)) {
    sh_config_free(cfg);
    return fail("config has no study block; use `simulate`");
  }
  sh_study* study = sh_study_run(cfg);
  if (!study) {
    const int code = exit_code_for(sh_last_status());
    std::fprintf(stderr, "error: %s\n", sh_last_error());
    sh_config_free(cfg);
    return code;
  }
  std::fputs(sh_study_summary(study), stdout);

  const std::filesystem::path dir(sh_config_output_dir(cfg));
  const std::string csv_path = (dir / "convergence.csv").string();
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  int code = 0;
  char* csv = sh_study_csv(study);
  std::FILE* out = std::fopen(csv_path.c_str(), "wb");
  if (out && std::fputs(csv, out) >= 0)
    std::printf("wrote %s\n", csv_path.c_str());
  else
    code = fail("cannot write " + csv_path);
  if (out) std::fclose(out);
  sh_string_free(csv);
  sh_study_free(study);
  sh_config_free(cfg);
  return code;
}

int run_verify() {
  sh_verification* v = sh_verify_run();
  if (!v) return fail(sh_last_error());
  char* table = sh_verify_render(v);
  std::fputs(table, stdout);
  const bool ok = sh_verify_all_passed(v) != 0;
  sh_string_free(table);
  sh_verify_free(v);
  return ok ? 0 : 3;
}

int run_energy(const std::vector<std::string>& paths, bool export_text) {
  for (const std::string& path : paths) {
    sh_snapshot* s = sh_snapshot_open(path.c_str());
    if (!s) return fail(sh_last_error());
    std::printf(
        "%s: dim %d  M %d  L %g  level %lld  t %g  E %.16e  max|u| %.10e\n",
        path.c_str(), sh_snapshot_dim(s), sh_snapshot_points(s),
        sh_snapshot_length(s), sh_snapshot_level(s), sh_snapshot_time(s),
        sh_snapshot_energy(s), sh_snapshot_max(s));
    if (export_text) {
      const std::string text_path = path + ".txt";
      if (sh_snapshot_export_text(s, text_path.c_str()) != SH_OK) {
        sh_snapshot_free(s);
        return fail(sh_last_error());
      }
      std::printf("wrote %s\n", text_path.c_str());
    }
    sh_snapshot_free(s);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "implicit BDF3 / finite-difference solver for the Swift-Hohenberg "
      "equation on periodic boxes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "1.0.0");

  std::string sim_config, resume_path;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "advance a configured run and write its outputs");
  simulate->add_option("config", sim_config, "run configuration file")
      ->required();
  simulate->add_option("--resume", resume_path,
                       "checkpoint file to continue from");

  std::string study_config;
  CLI::App* converge = app.add_subcommand(
      "converge", "run the convergence study described by a config");
  converge->add_option("config", study_config,
                       "configuration with a study block")
      ->required();

  CLI::App* verify = app.add_subcommand(
      "verify", "check the scheme's kernels and operator identities");

  std::vector<std::string> snapshots;
  bool export_text = false;
  CLI::App* energy = app.add_subcommand(
      "energy", "recompute the free energy of stored snapshots");
  energy->add_option("snapshot", snapshots, "snapshot files")->required();
  energy->add_flag("--text", export_text,
                   "also write a plain-text listing next to each snapshot");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (simulate->parsed()) return run_simulate(sim_config, resume_path);
  if (converge->parsed()) return run_converge(study_config);
  if (verify->parsed()) return run_verify();
  return run_energy(snapshots, export_text);
}
