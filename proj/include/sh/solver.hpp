#pragma once

#include <vector>

#include "sh/bdf.hpp"
#include "sh/grid.hpp"
#include "sh/spectral.hpp"

namespace sh {

enum class LinearMode { fourier_direct, iterative };

struct SolveConfig {
  // L2 residual target; when the rounding floor of evaluating the operator
  // at the current scale sits above it, the floor is the effective target
  double abs_tol = 1e-10;
  int max_newton_iters = 25;
  int max_inner_iters = 200;    // per linearised solve
  LinearMode linear_mode = LinearMode::fourier_direct;
  bool cubic_terms = true;      // test hook: false drops u^3 and g u^2
  bool operator==(const SolveConfig&) const = default;
};

enum GuardFlag : unsigned {
  kGuardSolvability = 1u,
  kGuardEnergy = 2u,
  kGuardConvergence = 4u,
};

struct StepReport {
  int newton_iters = 0;  // residual evaluations, so >= 1 even on instant hits
  double final_residual_l2 = 0.0;
  std::vector<double> residual_history;
  unsigned guard_flags = 0;
};

struct NewtonResult {
  GridField solution;
  StepReport report;
  bool converged = false;
};

// Pi(w) = lead w - rhs_g + (1+lap)^2 w + f(w) [- forcing]; zero at the
// accepted level.
GridField scheme_residual(const GridField& w, const GridField& rhs_g,
                          double lead_weight, const ModelParams& p,
                          const GridField* forcing = nullptr,
                          bool cubic_terms = true);

// Solves (lead + (1+lap)^2 + diag) x = rhs to 1e-12 relative or the
// evaluation rounding floor, whichever is larger. fourier_direct iterates
// the exact constant-coefficient inverse against the diagonal fluctuation
// and falls back to conjugate gradients when the fluctuation is too strong
// for the split to contract; iterative runs conjugate gradients with the
// same inverse as preconditioner.
GridField solve_linearized(const GridField& rhs, double lead_weight,
                           const GridField& diag, const SolveConfig& cfg,
                           SpectralSolver& spectral);

NewtonResult solve_implicit_level(const GridField& initial_guess,
                                  const GridField& rhs_g, double lead_weight,
                                  const SolveConfig& cfg, const ModelParams& p,
                                  const GridField* forcing,
                                  SpectralSolver& spectral);

// Assembles the initial iterate (quadratic extrapolant once three levels
// exist, else the newest level) and the lagged rhs, then runs the Newton
// solve for the given level.
NewtonResult newton_step_solve(const TimeHistory& hist, long level,
                               const SolveConfig& cfg, const ModelParams& p,
                               const GridField* phi0, const GridField* phi1,
                               const GridField* forcing,
                               SpectralSolver& spectral);

struct StepConstraints {
  double tau_solvability = 0.0;  // 3/(2(g^2+eps)), binding at level 2
  double tau_energy = 0.0;       // 1/(2 g^2 + 1.5 eps)
  // lead-weight conditions level by level (level 3 covers everything later)
  double tau_solvability_level1 = 0.0;  // 2/(g^2+eps)
  double tau_solvability_level2 = 0.0;
  double tau_solvability_level3 = 0.0;  // 11/(6(g^2+eps))
  bool solvability_ok = true;
  bool energy_ok = true;
};

// Advisory only: violations are reported, never fatal.
StepConstraints check_step_constraints(double tau, const ModelParams& p);

}  // namespace sh
