#pragma once

#include "sh/grid.hpp"

namespace sh {

// Convolution weights of the implicit third-order backward-difference
// operator D3 v^k = sum_j b_{k-j} (v^j - v^{j-1}); only the first three are
// nonzero.
struct BdfWeights {
  double tau = 0.0;
  double b0 = 0.0;  // 11/(6 tau)
  double b1 = 0.0;  // -7/(6 tau)
  double b2 = 0.0;  // 1/(3 tau)

  static BdfWeights make(double tau);

  // Coefficient multiplying the unknown level: 2/tau at level 1, 3/(2 tau)
  // at level 2, b0 from level 3 on.
  double lead_weight(long level) const;
};

// Rolling window of the newest accepted levels (at most three), newest
// first, plus the index of the newest level.
class TimeHistory {
 public:
  TimeHistory(const GridSpec& spec, double tau);

  // Rebuilds a window mid-run (restart path); fields are newest first and
  // must all live on `spec`.
  TimeHistory(const GridSpec& spec, double tau, long newest_level,
              std::vector<GridField> newest_first);

  double tau() const { return tau_; }
  const GridSpec& spec() const { return spec_; }
  long newest_level() const { return newest_level_; }  // -1 before any push
  int stored() const { return static_cast<int>(levels_.size()); }

  // Appends the accepted level newest_level()+1, evicting the oldest field
  // once more than three are held.
  void push(GridField u);

  // 0 = newest stored level. Throws std::out_of_range when not held.
  const GridField& from_newest(int back) const;

 private:
  GridSpec spec_;
  double tau_;
  long newest_level_ = -1;
  std::vector<GridField> levels_;
};

// Backward-difference quotient at the new level: the two-level startup form
// at level 1, the second-order form at level 2, full third-order from level
// 3 on. `level` must equal hist.newest_level() + 1.
GridField d3_apply(const TimeHistory& hist, const GridField& candidate,
                   long level);

// Known part of the implicit equation, so that for any candidate w
//   d3_apply(hist, w, level) == lead_weight(level) * w - lagged_rhs(...).
// Level 1 additionally needs the startup pair phi0/phi1.
GridField lagged_rhs(const TimeHistory& hist, long level,
                     const GridField* phi0 = nullptr,
                     const GridField* phi1 = nullptr);

enum class StartupSign { corrected, uncorrected };

struct StartupFields {
  GridField phi0;
  GridField phi1;  // time-derivative estimate at t = 0
  GridField u0;    // phi0 + (tau/2) phi1, the perturbed starting state
};

// In corrected mode phi1 is the actual initial slope
//   -(1+lap)^2 phi0 - f(phi0) [+ forcing], consistent with the equation.
// uncorrected keeps the raw operator sign (and takes no forcing); it is
// kept selectable for comparison runs.
StartupFields initial_level(const GridField& phi0, double tau,
                            const ModelParams& p,
                            StartupSign sign = StartupSign::corrected,
                            const GridField* forcing_at_t0 = nullptr);

}  // namespace sh
