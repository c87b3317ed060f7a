#pragma once

#include "sh/bdf.hpp"
#include "sh/grid.hpp"

namespace sh {

// One row of the per-level energy log.
struct EnergyRecord {
  long level = 0;
  double time = 0.0;
  double energy = 0.0;
  double modified_energy = 0.0;
  double l2 = 0.0;
  double l4 = 0.0;
  double linf = 0.0;
  double bound_lhs = 0.0;
  double bound_rhs = 0.0;
  int newton_iters = 0;
  double residual_l2 = 0.0;
};

// E[u] = 1/2 ||(1+lap)u||^2 + 1/4 ||u||_4^4 - g/3 <u^2,u> - eps/2 ||u||^2.
double discrete_energy(const GridField& u, const ModelParams& p);

// E at the newest stored level plus the difference penalties
//   3/(4 tau) ||u^n - u^{n-1}||^2            from level 1 on,
//   1/(6 tau) ||u^{n-1} - u^{n-2}||^2        from level 2 on.
// `level` must equal hist.newest_level(); at level 0 this is just E.
double modified_energy(const TimeHistory& hist, long level,
                       const ModelParams& p);

struct LinfBound {
  double lhs = 0.0;  // (||(1+lap)u|| + ||u||)^2
  double rhs = 0.0;  // 4 E0 + (9/7)(1 + eps + g^2)^2 L^dim
  bool holds = true;
};

// A-priori uniform bound implied by energy dissipation; `initial_energy` is
// the discrete energy of the run's starting state u^0.
LinfBound linf_bound_check(const GridField& u, double initial_energy,
                           const ModelParams& p);

}  // namespace sh
