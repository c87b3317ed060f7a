#pragma once

#include <string>
#include <vector>

#include "sh/bdf.hpp"
#include "sh/config.hpp"
#include "sh/energy.hpp"
#include "sh/snapshot.hpp"
#include "sh/solver.hpp"
#include "sh/spectral.hpp"

namespace sh {

// Portable seeded noise: mt19937_64 through the 53-bit mantissa map, values
// uniform in [-amplitude, amplitude), drawn in row-major node order. The
// same seed yields the same field on every platform.
GridField seeded_uniform_field(const GridSpec& spec, std::uint64_t seed,
                               double amplitude);

// phi0 for the configured selector; reads cfg.ic_file for InitialKind::file.
GridField initial_condition(const RunConfig& cfg);

struct RunReport {
  bool completed = false;
  long failed_level = -1;  // set when a Newton solve fails
  unsigned guard_flags = 0;
  bool modified_energy_increased = false;  // beyond 1e-10 (1 + |E_mod|)
  bool linf_bound_violated = false;
  StepConstraints constraints;
  std::string message;
};

// One run of the scheme: startup level, then implicit levels 1, 2, 3, ...
// with a rolling three-field history. Deterministic given config and seed.
class Simulation {
 public:
  explicit Simulation(const RunConfig& cfg);

  // Resume from a checkpoint written by an identical config; any parameter
  // drift is refused via the embedded digest.
  Simulation(const RunConfig& cfg, const std::string& checkpoint_path);

  const RunConfig& config() const { return cfg_; }
  long level() const { return hist_.newest_level(); }
  double time() const { return static_cast<double>(level()) * cfg_.tau; }
  const GridField& state() const { return hist_.from_newest(0); }
  const std::vector<EnergyRecord>& records() const { return records_; }
  const RunReport& report() const { return report_; }
  const StepReport& last_step() const { return last_step_; }

  // One accepted level. False when Newton fails; report() then carries the
  // failing level and the run must stop.
  bool advance();

  // Advances to cfg.steps and writes energy.csv, interval snapshots and
  // checkpoints, and final.snap under cfg.output_dir.
  bool run();

  SnapshotHeader current_header() const;
  void write_state(const std::string& path) const;
  void write_checkpoint_file(const std::string& path) const;
  void write_energy_log(const std::string& path) const;

 private:
  Simulation(const RunConfig& cfg, CheckpointData&& data);

  void apply_constraint_guards();
  void record_level(int newton_iters, double residual);

  RunConfig cfg_;
  GridSpec spec_;
  ModelParams params_;
  SpectralSolver spectral_;
  TimeHistory hist_;
  GridField phi0_;
  GridField phi1_;
  bool have_startup_ = false;
  std::vector<EnergyRecord> records_;
  RunReport report_;
  StepReport last_step_;
  double initial_energy_ = 0.0;
  double prev_modified_energy_ = 0.0;
};

}  // namespace sh
