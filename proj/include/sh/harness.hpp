#pragma once

#include <string>
#include <vector>

#include "sh/config.hpp"
#include "sh/grid.hpp"

namespace sh {

// u(x, y, t) = cos t sin 2x sin 2y, periodic on (0, 2pi)^2.
double exact_solution_at(double x, double y, double t);
GridField exact_solution(const GridSpec& spec, double t);

// Source term that turns exact_solution into a solution of the forced
// equation, built with continuous-operator algebra ((1+lap)^2 u = 49 u):
//   forcing = u_t + (1+lap)^2 u + f(u)
//           = (-sin t + 49 cos t) sin2x sin2y + u^3 - g u^2 - eps u.
double manufactured_forcing_at(double x, double y, double t,
                               const ModelParams& p);
GridField manufactured_forcing(const GridSpec& spec, double t,
                               const ModelParams& p);

// log2(e_coarse / e_fine); resolution doubles between consecutive rows.
double estimate_order(double e_coarse, double e_fine);

struct ConvergenceRow {
  long n = 0;        // time steps N
  double tau = 0.0;
  int points = 0;    // M
  double error_l2 = 0.0;
  double order = 0.0;
  bool has_order = false;  // first row has no coarser neighbour
};

struct StudyResult {
  std::vector<ConvergenceRow> rows;
  std::string summary;  // human-readable table
};

// Runs the full solver path with the manufactured forcing for each N at
// fixed M and reports e(N) = ||U^N - u(T)|| with successive orders.
StudyResult run_temporal_study(const std::vector<long>& ns, int points,
                               double horizon, const ModelParams& params,
                               const SolveConfig& solve);

// Same at fixed tau across grid sizes; orders are measured in h.
StudyResult run_spatial_study(const std::vector<int>& ms, double tau,
                              double horizon, const ModelParams& params,
                              const SolveConfig& solve);

// Dispatches on cfg.study (which must be set).
StudyResult run_study(const RunConfig& cfg);

// Columns N,tau,M,error_l2,order; the order cell is empty on the first row.
std::string convergence_csv(const std::vector<ConvergenceRow>& rows);

}  // namespace sh
