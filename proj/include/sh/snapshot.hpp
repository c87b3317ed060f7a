#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sh/energy.hpp"
#include "sh/grid.hpp"

namespace sh {

// Self-describing field file. Byte layout, all little-endian:
//   "SHSNAP\0\0"  u32 version  u32 dim  u64 M  f64 L  f64 tau  i64 level
//   f64 time  f64 g  f64 eps  then M^dim IEEE f64 values, row-major.
struct SnapshotHeader {
  int dim = 0;
  int points = 0;       // M
  double length = 0.0;  // L
  double tau = 0.0;
  long level = 0;
  double time = 0.0;
  ModelParams params;

  GridSpec grid() const { return {dim, points, length}; }
  bool operator==(const SnapshotHeader&) const = default;
};

struct Snapshot {
  SnapshotHeader header;
  GridField field;
};

void write_snapshot(const std::string& path, const SnapshotHeader& header,
                    const GridField& field);

Snapshot read_snapshot(const std::string& path);

// Plotting export: node coordinates and value per line ("x y v" in 2D with
// a blank line between rows, "x y z v" in 3D).
void write_snapshot_text(const std::string& path, const Snapshot& snap);

// Restart state: the rolling history window plus every energy record so far,
// so a resumed run rewrites the complete log. The digest ties the file to
// the canonical config print; resuming under altered parameters is refused.
struct CheckpointData {
  std::uint64_t config_digest = 0;
  GridSpec spec;
  double tau = 0.0;
  long newest_level = 0;
  std::vector<GridField> history_newest_first;
  std::vector<EnergyRecord> records;
};

void write_checkpoint(const std::string& path, const CheckpointData& data);

CheckpointData read_checkpoint(const std::string& path);

}  // namespace sh
