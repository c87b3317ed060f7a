#include "sh/csvio.hpp"

#include <cstdio>
#include <fstream>

#include "sh/errors.hpp"

namespace sh {

std::string csv_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

std::string energy_csv(const std::vector<EnergyRecord>& records) {
  std::string out =
      "level,time,E,E_mod,l2,l4,linf,bound_lhs,bound_rhs,newton_iters,"
      "residual\n";
  for (const EnergyRecord& r : records) {
    out += std::to_string(r.level);
    for (double v : {r.time, r.energy, r.modified_energy, r.l2, r.l4, r.linf,
                     r.bound_lhs, r.bound_rhs})
      out += "," + csv_real(v);
    out += "," + std::to_string(r.newton_iters);
    out += "," + csv_real(r.residual_l2) + "\n";
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("short write to '" + path + "'");
}

void write_energy_csv(const std::string& path,
                      const std::vector<EnergyRecord>& records) {
  write_text_file(path, energy_csv(records));
}

}  // namespace sh
