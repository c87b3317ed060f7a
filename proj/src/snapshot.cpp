#include "sh/snapshot.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "sh/csvio.hpp"
#include "sh/errors.hpp"

namespace sh {

namespace {

constexpr char kSnapMagic[8] = {'S', 'H', 'S', 'N', 'A', 'P', '\0', '\0'};
constexpr char kCkptMagic[8] = {'S', 'H', 'C', 'K', 'P', 'T', '\0', '\0'};
constexpr std::uint32_t kFormatVersion = 1;
constexpr std::size_t kSnapHeaderBytes = 8 + 4 + 4 + 8 + 6 * 8;

void put_u32(std::string& b, std::uint32_t v) {
  for (int i = 0; i < 4; ++i)
    b.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& b, std::uint64_t v) {
  for (int i = 0; i < 8; ++i)
    b.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_i64(std::string& b, std::int64_t v) {
  put_u64(b, static_cast<std::uint64_t>(v));
}

void put_i32(std::string& b, std::int32_t v) {
  put_u32(b, static_cast<std::uint32_t>(v));
}

void put_f64(std::string& b, double v) {
  put_u64(b, std::bit_cast<std::uint64_t>(v));
}

// Sequential little-endian reader over an in-memory file image.
struct Cursor {
  const unsigned char* p;
  std::size_t n;
  const char* what;  // "snapshot" or "checkpoint", for error text
  std::size_t off = 0;

  std::size_t remaining() const { return n - off; }

  void need(std::size_t k) {
    if (off + k > n) throw IoError(std::string(what) + " file truncated");
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(p[off + i]) << (8 * i);
    off += 4;
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(p[off + i]) << (8 * i);
    off += 8;
    return v;
  }
  std::int64_t i64() { return static_cast<std::int64_t>(u64()); }
  std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
  double f64() { return std::bit_cast<double>(u64()); }
};

std::string read_file(const std::string& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError(std::string("cannot open ") + what + " file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Stage through a temp file so an interrupted write never clobbers the
// previous good file.
void write_file_atomic(const std::string& path, const std::string& bytes) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + tmp + "'");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("short write to '" + tmp + "'");
  }
  std::filesystem::rename(tmp, path);
}

void put_field(std::string& b, const GridField& f) {
  for (double v : f.values()) put_f64(b, v);
}

GridField take_field(Cursor& c, const GridSpec& spec) {
  GridField f(spec);
  for (double& v : f.values()) v = c.f64();
  return f;
}

bool spec_plausible(int dim, std::uint64_t m, double length) {
  return (dim == 2 || dim == 3) && m >= 4 && m <= (1u << 14) &&
         length > 0.0;
}

}  // namespace

void write_snapshot(const std::string& path, const SnapshotHeader& header,
                    const GridField& field) {
  if (!(header.grid() == field.spec()))
    throw std::invalid_argument("snapshot header does not match the field");
  std::string b;
  b.reserve(kSnapHeaderBytes + 8 * field.size());
  b.append(kSnapMagic, sizeof kSnapMagic);
  put_u32(b, kFormatVersion);
  put_u32(b, static_cast<std::uint32_t>(header.dim));
  put_u64(b, static_cast<std::uint64_t>(header.points));
  put_f64(b, header.length);
  put_f64(b, header.tau);
  put_i64(b, header.level);
  put_f64(b, header.time);
  put_f64(b, header.params.g);
  put_f64(b, header.params.eps);
  put_field(b, field);
  write_file_atomic(path, b);
}

Snapshot read_snapshot(const std::string& path) {
  const std::string bytes = read_file(path, "snapshot");
  if (bytes.size() < kSnapHeaderBytes ||
      std::memcmp(bytes.data(), kSnapMagic, sizeof kSnapMagic) != 0)
    throw IoError("not a snapshot file: '" + path + "'");
  Cursor c{reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size(),
           "snapshot"};
  c.off = sizeof kSnapMagic;
  const std::uint32_t version = c.u32();
  if (version != kFormatVersion)
    throw IoError("unsupported snapshot version " + std::to_string(version));
  SnapshotHeader h;
  const std::uint32_t dim = c.u32();
  const std::uint64_t m = c.u64();
  h.length = c.f64();
  h.tau = c.f64();
  h.level = static_cast<long>(c.i64());
  h.time = c.f64();
  h.params.g = c.f64();
  h.params.eps = c.f64();
  if (!spec_plausible(static_cast<int>(dim), m, h.length))
    throw IoError("snapshot header invalid: '" + path + "'");
  h.dim = static_cast<int>(dim);
  h.points = static_cast<int>(m);
  const GridSpec spec = h.grid();
  if (c.remaining() != 8 * spec.node_count())
    throw IoError("payload size mismatch: '" + path + "'");
  GridField f = take_field(c, spec);
  return {h, std::move(f)};
}

void write_snapshot_text(const std::string& path, const Snapshot& snap) {
  const GridSpec spec = snap.header.grid();
  if (!(snap.field.spec() == spec))
    throw std::invalid_argument("snapshot field does not match its header");
  const double h = spec.spacing();
  std::string out;
  out.reserve(snap.field.size() * 48);
  char line[128];
  if (spec.dim == 2) {
    for (int i = 0; i < spec.points; ++i) {
      for (int j = 0; j < spec.points; ++j) {
        std::snprintf(line, sizeof line, "%.10g %.10g %.16e\n", i * h, j * h,
                      snap.field.at(i, j));
        out += line;
      }
      out += '\n';
    }
  } else {
    for (int i = 0; i < spec.points; ++i)
      for (int j = 0; j < spec.points; ++j)
        for (int k = 0; k < spec.points; ++k) {
          std::snprintf(line, sizeof line, "%.10g %.10g %.10g %.16e\n", i * h,
                        j * h, k * h, snap.field.at(i, j, k));
          out += line;
        }
  }
  write_text_file(path, out);
}

void write_checkpoint(const std::string& path, const CheckpointData& data) {
  validate(data.spec);
  const std::size_t stored = data.history_newest_first.size();
  if (stored < 1 || stored > 3)
    throw std::invalid_argument("checkpoint must hold 1 to 3 history fields");
  for (const GridField& f : data.history_newest_first)
    if (!(f.spec() == data.spec))
      throw std::invalid_argument("checkpoint field lives on a different grid");
  std::string b;
  b.reserve(64 + stored * 8 * data.spec.node_count() +
            96 * data.records.size());
  b.append(kCkptMagic, sizeof kCkptMagic);
  put_u32(b, kFormatVersion);
  put_u64(b, data.config_digest);
  put_u32(b, static_cast<std::uint32_t>(data.spec.dim));
  put_u64(b, static_cast<std::uint64_t>(data.spec.points));
  put_f64(b, data.spec.length);
  put_f64(b, data.tau);
  put_i64(b, data.newest_level);
  put_u32(b, static_cast<std::uint32_t>(stored));
  for (const GridField& f : data.history_newest_first) put_field(b, f);
  put_u64(b, data.records.size());
  for (const EnergyRecord& r : data.records) {
    put_i64(b, r.level);
    for (double v : {r.time, r.energy, r.modified_energy, r.l2, r.l4, r.linf,
                     r.bound_lhs, r.bound_rhs})
      put_f64(b, v);
    put_i32(b, r.newton_iters);
    put_f64(b, r.residual_l2);
  }
  write_file_atomic(path, b);
}

CheckpointData read_checkpoint(const std::string& path) {
  const std::string bytes = read_file(path, "checkpoint");
  if (bytes.size() < sizeof kCkptMagic ||
      std::memcmp(bytes.data(), kCkptMagic, sizeof kCkptMagic) != 0)
    throw IoError("not a checkpoint file: '" + path + "'");
  Cursor c{reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size(),
           "checkpoint"};
  c.off = sizeof kCkptMagic;
  const std::uint32_t version = c.u32();
  if (version != kFormatVersion)
    throw IoError("unsupported checkpoint version " + std::to_string(version));
  CheckpointData d;
  d.config_digest = c.u64();
  const std::uint32_t dim = c.u32();
  const std::uint64_t m = c.u64();
  const double length = c.f64();
  if (!spec_plausible(static_cast<int>(dim), m, length))
    throw IoError("checkpoint header invalid: '" + path + "'");
  d.spec = {static_cast<int>(dim), static_cast<int>(m), length};
  d.tau = c.f64();
  d.newest_level = static_cast<long>(c.i64());
  const std::uint32_t stored = c.u32();
  if (stored < 1 || stored > 3 ||
      static_cast<long>(stored) > d.newest_level + 1)
    throw IoError("checkpoint header invalid: '" + path + "'");
  for (std::uint32_t i = 0; i < stored; ++i)
    d.history_newest_first.push_back(take_field(c, d.spec));
  const std::uint64_t count = c.u64();
  if (count > (1ull << 32))
    throw IoError("checkpoint header invalid: '" + path + "'");
  d.records.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    EnergyRecord r;
    r.level = static_cast<long>(c.i64());
    r.time = c.f64();
    r.energy = c.f64();
    r.modified_energy = c.f64();
    r.l2 = c.f64();
    r.l4 = c.f64();
    r.linf = c.f64();
    r.bound_lhs = c.f64();
    r.bound_rhs = c.f64();
    r.newton_iters = static_cast<int>(c.i32());
    r.residual_l2 = c.f64();
    d.records.push_back(r);
  }
  if (c.remaining() != 0)
    throw IoError("checkpoint has trailing bytes: '" + path + "'");
  return d;
}

}  // namespace sh
