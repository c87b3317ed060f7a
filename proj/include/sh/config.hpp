#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sh/bdf.hpp"
#include "sh/grid.hpp"
#include "sh/solver.hpp"

namespace sh {

enum class InitialKind { zero, example1, example2, random, file };

// Convergence-study request attached to a config (`converge` subcommand).
struct StudySpec {
  enum class Kind { temporal, spatial };
  Kind kind = Kind::temporal;
  std::vector<long> ns;  // temporal: time-step counts, strictly increasing
  std::vector<int> ms;   // spatial: grid sizes, strictly increasing
  double horizon = 0.0;  // final time T
  bool operator==(const StudySpec&) const = default;
};

struct RunConfig {
  int dim = 2;
  int points = 0;      // M, samples per axis
  double length = 0.0; // L, box edge
  double tau = 0.0;
  long steps = 0;
  ModelParams params;
  InitialKind ic = InitialKind::zero;
  double amplitude = 0.01;     // ic = random
  std::uint64_t seed = 1;      // ic = random
  std::string ic_file;         // ic = file
  bool forcing = false;
  SolveConfig solve;
  StartupSign sign_mode = StartupSign::corrected;
  long snapshot_every = 0;    // 0 = never
  long checkpoint_every = 0;  // 0 = never
  std::string output_dir = ".";
  std::optional<StudySpec> study;

  GridSpec grid() const { return {dim, points, length}; }
  bool operator==(const RunConfig&) const = default;
};

// Parses `key = value` lines ('#' starts a comment). Unknown or duplicate
// keys, malformed values, and invariant violations throw ConfigError with
// the offending line number where one exists.
RunConfig parse_config(const std::string& text);

RunConfig load_config(const std::string& path);

// Canonical form: fixed key order, shortest round-trip number formatting.
// parse_config(print_config(c)) == c for every valid config.
std::string print_config(const RunConfig& c);

// FNV-1a over print_config(c); checkpoints embed it so a resume under
// altered parameters is refused.
std::uint64_t config_digest(const RunConfig& c);

std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace sh
