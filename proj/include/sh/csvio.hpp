#pragma once

#include <string>
#include <vector>

#include "sh/energy.hpp"

namespace sh {

// Header `level,time,E,E_mod,l2,l4,linf,bound_lhs,bound_rhs,newton_iters,
// residual`, one row per accepted level, reals at 17 significant digits so
// identical runs produce identical bytes.
std::string energy_csv(const std::vector<EnergyRecord>& records);

void write_energy_csv(const std::string& path,
                      const std::vector<EnergyRecord>& records);

void write_text_file(const std::string& path, const std::string& text);

// %.16e: full round-trip precision for CSV output.
std::string csv_real(double x);

}  // namespace sh
