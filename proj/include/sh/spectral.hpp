#pragma once

#include <memory>

#include "sh/grid.hpp"

namespace sh {

// Inverts  lead + (1+lap)^2 + shift  exactly in the discrete Fourier basis.
// Owns its transform plans and workspace: one instance per grid; concurrent
// calls on the same instance are not allowed, separate instances are fine.
class SpectralSolver {
 public:
  explicit SpectralSolver(const GridSpec& spec);
  ~SpectralSolver();
  SpectralSolver(const SpectralSolver&) = delete;
  SpectralSolver& operator=(const SpectralSolver&) = delete;

  const GridSpec& spec() const;

  // out = (lead + (1+lap)^2 + shift)^{-1} rhs. Throws std::domain_error when
  // the symbol vanishes for some mode.
  void apply_inverse(const GridField& rhs, double lead, double shift,
                     GridField& out);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace sh
