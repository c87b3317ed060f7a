#pragma once

#include <string>
#include <vector>

namespace sh {

struct CheckRow {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerificationReport {
  std::vector<CheckRow> rows;
  bool all_passed = false;
};

// Runs the kernel checks and the discrete operator identities on fixed
// seeded data. Pure and deterministic; the CLI prints the rows as a table.
VerificationReport run_verification();

std::string render_verification(const VerificationReport& report);

}  // namespace sh
