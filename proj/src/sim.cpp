#include "sh/sim.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <random>
#include <stdexcept>
#include <utility>

#include "sh/csvio.hpp"
#include "sh/errors.hpp"
#include "sh/harness.hpp"

namespace sh {

namespace {

const RunConfig& require_simulation_config(const RunConfig& cfg) {
  if (cfg.study)
    throw std::invalid_argument(
        "a study config drives a convergence run, not a simulation");
  return cfg;
}

GridField example2_field(const GridSpec& spec) {
  constexpr double pi = std::numbers::pi;
  const double h = spec.spacing();
  GridField f(spec);
  for (int i = 0; i < spec.points; ++i)
    for (int j = 0; j < spec.points; ++j) {
      const double x = i * h, y = j * h;
      f.at(i, j) = 0.1 + 0.02 * std::cos(pi * x / 100.0) *
                             std::sin(pi * y / 100.0) +
                   0.05 * std::sin(pi * x / 20.0) * std::cos(pi * y / 20.0);
    }
  return f;
}

std::string snapshot_name(long level) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "u_%06ld.snap", level);
  return buf;
}

CheckpointData validated_checkpoint(const RunConfig& cfg, CheckpointData&& d) {
  if (d.config_digest != config_digest(cfg))
    throw ConfigError(0,
                      "checkpoint was written by a different config; "
                      "refusing to resume");
  if (!(d.spec == cfg.grid()) || d.tau != cfg.tau)
    throw IoError("checkpoint grid disagrees with its digest");
  if (d.newest_level < 1) throw IoError("checkpoint level must be >= 1");
  if (d.records.size() != static_cast<std::size_t>(d.newest_level) + 1)
    throw IoError("checkpoint energy records are incomplete");
  for (long i = 0; i <= d.newest_level; ++i)
    if (d.records[static_cast<std::size_t>(i)].level != i)
      throw IoError("checkpoint energy records are out of order");
  return std::move(d);
}

}  // namespace

GridField seeded_uniform_field(const GridSpec& spec, std::uint64_t seed,
                               double amplitude) {
  validate(spec);
  if (!(amplitude > 0.0))
    throw std::invalid_argument("amplitude must be positive");
  std::mt19937_64 rng(seed);
  GridField f(spec);
  for (double& v : f.values()) {
    const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    v = amplitude * (2.0 * unit - 1.0);
  }
  return f;
}

GridField initial_condition(const RunConfig& cfg) {
  const GridSpec spec = cfg.grid();
  validate(spec);
  switch (cfg.ic) {
    case InitialKind::zero:
      return GridField(spec);
    case InitialKind::example1:
      return exact_solution(spec, 0.0);
    case InitialKind::example2:
      return example2_field(spec);
    case InitialKind::random:
      return seeded_uniform_field(spec, cfg.seed, cfg.amplitude);
    case InitialKind::file: {
      Snapshot snap = read_snapshot(cfg.ic_file);
      if (!(snap.field.spec() == spec))
        throw IoError("initial snapshot '" + cfg.ic_file +
                      "' lives on a different grid than the config");
      return std::move(snap.field);
    }
  }
  throw std::logic_error("unreachable");
}

Simulation::Simulation(const RunConfig& cfg)
    : cfg_(require_simulation_config(cfg)),
      spec_(cfg.grid()),
      params_(cfg.params),
      spectral_(spec_),
      hist_(spec_, cfg.tau) {
  if (cfg_.steps < 0) throw std::invalid_argument("steps must be >= 0");
  GridField phi0 = initial_condition(cfg_);
  GridField forcing0;
  const GridField* f0 = nullptr;
  if (cfg_.forcing) {
    forcing0 = manufactured_forcing(spec_, 0.0, params_);
    f0 = &forcing0;
  }
  StartupFields start =
      initial_level(phi0, cfg_.tau, params_, cfg_.sign_mode, f0);
  phi0_ = std::move(start.phi0);
  phi1_ = std::move(start.phi1);
  have_startup_ = true;
  hist_.push(std::move(start.u0));
  apply_constraint_guards();
  record_level(0, 0.0);
  initial_energy_ = records_.front().energy;
}

Simulation::Simulation(const RunConfig& cfg, const std::string& checkpoint_path)
    : Simulation(cfg, validated_checkpoint(cfg, read_checkpoint(checkpoint_path))) {}

Simulation::Simulation(const RunConfig& cfg, CheckpointData&& data)
    : cfg_(cfg),
      spec_(cfg.grid()),
      params_(cfg.params),
      spectral_(spec_),
      hist_(spec_, cfg.tau, data.newest_level,
            std::move(data.history_newest_first)) {
  records_ = std::move(data.records);
  apply_constraint_guards();
  initial_energy_ = records_.front().energy;
  prev_modified_energy_ = records_.back().modified_energy;
}

void Simulation::apply_constraint_guards() {
  report_.constraints = check_step_constraints(cfg_.tau, params_);
  if (!report_.constraints.solvability_ok)
    report_.guard_flags |= kGuardSolvability;
  if (!report_.constraints.energy_ok) report_.guard_flags |= kGuardEnergy;
}

void Simulation::record_level(int newton_iters, double residual) {
  const long lvl = hist_.newest_level();
  const GridField& u = hist_.from_newest(0);
  EnergyRecord r;
  r.level = lvl;
  r.time = static_cast<double>(lvl) * cfg_.tau;
  r.energy = discrete_energy(u, params_);
  r.modified_energy = modified_energy(hist_, lvl, params_);
  r.l2 = field_norm(u, Norm::l2);
  r.l4 = field_norm(u, Norm::l4);
  r.linf = field_norm(u, Norm::linf);
  const double e0 = records_.empty() ? r.energy : initial_energy_;
  const LinfBound bound = linf_bound_check(u, e0, params_);
  r.bound_lhs = bound.lhs;
  r.bound_rhs = bound.rhs;
  if (!bound.holds) report_.linf_bound_violated = true;
  r.newton_iters = newton_iters;
  r.residual_l2 = residual;
  if (!records_.empty() &&
      r.modified_energy >
          prev_modified_energy_ + 1e-10 * (1.0 + std::abs(prev_modified_energy_)))
    report_.modified_energy_increased = true;
  prev_modified_energy_ = r.modified_energy;
  records_.push_back(r);
}

bool Simulation::advance() {
  const long next = hist_.newest_level() + 1;
  GridField forcing;
  const GridField* fp = nullptr;
  if (cfg_.forcing) {
    forcing =
        manufactured_forcing(spec_, static_cast<double>(next) * cfg_.tau, params_);
    fp = &forcing;
  }
  NewtonResult result = newton_step_solve(
      hist_, next, cfg_.solve, params_, have_startup_ ? &phi0_ : nullptr,
      have_startup_ ? &phi1_ : nullptr, fp, spectral_);
  last_step_ = result.report;
  report_.guard_flags |= result.report.guard_flags;
  if (!result.converged) {
    report_.failed_level = next;
    report_.message = "newton stalled at level " + std::to_string(next) +
                      " with residual " +
                      csv_real(result.report.final_residual_l2);
    return false;
  }
  hist_.push(std::move(result.solution));
  record_level(result.report.newton_iters, result.report.final_residual_l2);
  return true;
}

bool Simulation::run() {
  namespace fs = std::filesystem;
  const fs::path dir(cfg_.output_dir);
  if (!dir.empty()) fs::create_directories(dir);
  if (cfg_.snapshot_every > 0 && hist_.newest_level() == 0)
    write_state((dir / snapshot_name(0)).string());
  while (hist_.newest_level() < cfg_.steps) {
    if (!advance()) {
      write_energy_log((dir / "energy.csv").string());
      return false;
    }
    const long lvl = hist_.newest_level();
    if (cfg_.snapshot_every > 0 && lvl % cfg_.snapshot_every == 0)
      write_state((dir / snapshot_name(lvl)).string());
    if (cfg_.checkpoint_every > 0 && lvl % cfg_.checkpoint_every == 0)
      write_checkpoint_file((dir / "checkpoint.ckpt").string());
  }
  write_energy_log((dir / "energy.csv").string());
  write_state((dir / "final.snap").string());
  report_.completed = true;
  return true;
}

SnapshotHeader Simulation::current_header() const {
  SnapshotHeader h;
  h.dim = spec_.dim;
  h.points = spec_.points;
  h.length = spec_.length;
  h.tau = cfg_.tau;
  h.level = hist_.newest_level();
  h.time = time();
  h.params = params_;
  return h;
}

void Simulation::write_state(const std::string& path) const {
  write_snapshot(path, current_header(), hist_.from_newest(0));
}

void Simulation::write_checkpoint_file(const std::string& path) const {
  CheckpointData d;
  d.config_digest = config_digest(cfg_);
  d.spec = spec_;
  d.tau = cfg_.tau;
  d.newest_level = hist_.newest_level();
  for (int back = 0; back < hist_.stored(); ++back)
    d.history_newest_first.push_back(hist_.from_newest(back));
  d.records = records_;
  write_checkpoint(path, d);
}

void Simulation::write_energy_log(const std::string& path) const {
  write_energy_csv(path, records_);
}

}  // namespace sh
