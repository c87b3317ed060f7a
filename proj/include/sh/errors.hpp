#pragma once

#include <stdexcept>
#include <string>

namespace sh {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Config text could not be parsed or validated. `line` is 1-based, 0 when the
// problem is not tied to a single line.
struct ConfigError : Error {
  ConfigError(int line_no, const std::string& what_arg)
      : Error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + what_arg
                          : what_arg),
        line(line_no) {}
  int line = 0;
};

struct IoError : Error {
  using Error::Error;
};

// An implicit solve failed to converge mid-run.
struct SolverError : Error {
  using Error::Error;
};

}  // namespace sh
