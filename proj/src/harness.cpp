#include "sh/harness.hpp"

#include <cmath>
#include <cstdio>
#include <future>
#include <numbers>
#include <stdexcept>

#include "sh/csvio.hpp"
#include "sh/errors.hpp"
#include "sh/sim.hpp"

namespace sh {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <typename T>
void require_increasing(const std::vector<T>& v, const char* what) {
  if (v.empty()) throw std::invalid_argument(std::string(what) + " is empty");
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] <= v[i - 1])
      throw std::invalid_argument(std::string(what) +
                                  " must be strictly increasing");
}

RunConfig forced_run(int points, double tau, long steps,
                     const ModelParams& params, const SolveConfig& solve) {
  RunConfig cfg;
  cfg.dim = 2;
  cfg.points = points;
  cfg.length = kTwoPi;
  cfg.tau = tau;
  cfg.steps = steps;
  cfg.params = params;
  cfg.ic = InitialKind::example1;
  cfg.forcing = true;
  cfg.solve = solve;
  return cfg;
}

// Final-time L2 error of one full forced run.
double run_error(const RunConfig& cfg) {
  Simulation sim(cfg);
  while (sim.level() < cfg.steps)
    if (!sim.advance())
      throw SolverError("solver failed at level " +
                  std::to_string(sim.report().failed_level) + " (N = " +
                  std::to_string(cfg.steps) + ", M = " +
                  std::to_string(cfg.points) + ")");
  const GridField want = exact_solution(cfg.grid(), sim.time());
  GridField diff = sim.state();
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= want[i];
  return field_norm(diff, Norm::l2);
}

std::string render_summary(const std::vector<ConvergenceRow>& rows) {
  std::string out = "     N          tau      M      error_l2    order\n";
  char buf[128];
  for (const ConvergenceRow& r : rows) {
    if (r.has_order)
      std::snprintf(buf, sizeof buf, "%6ld %12.6g %6d %13.4e %8.2f\n", r.n,
                    r.tau, r.points, r.error_l2, r.order);
    else
      std::snprintf(buf, sizeof buf, "%6ld %12.6g %6d %13.4e        -\n", r.n,
                    r.tau, r.points, r.error_l2);
    out += buf;
  }
  return out;
}

StudyResult assemble(std::vector<ConvergenceRow> rows) {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    rows[i].order = estimate_order(rows[i - 1].error_l2, rows[i].error_l2);
    rows[i].has_order = true;
  }
  StudyResult out;
  out.summary = render_summary(rows);
  out.rows = std::move(rows);
  return out;
}

}  // namespace

double exact_solution_at(double x, double y, double t) {
  return std::cos(t) * std::sin(2.0 * x) * std::sin(2.0 * y);
}

GridField exact_solution(const GridSpec& spec, double t) {
  validate(spec);
  if (spec.dim != 2)
    throw std::invalid_argument("the manufactured solution is 2D");
  const double h = spec.spacing();
  GridField f(spec);
  for (int i = 0; i < spec.points; ++i)
    for (int j = 0; j < spec.points; ++j)
      f.at(i, j) = exact_solution_at(i * h, j * h, t);
  return f;
}

double manufactured_forcing_at(double x, double y, double t,
                               const ModelParams& p) {
  const double s = std::sin(2.0 * x) * std::sin(2.0 * y);
  const double u = std::cos(t) * s;
  return (-std::sin(t) + 49.0 * std::cos(t)) * s + u * u * u - p.g * u * u -
         p.eps * u;
}

GridField manufactured_forcing(const GridSpec& spec, double t,
                               const ModelParams& p) {
  validate(spec);
  if (spec.dim != 2)
    throw std::invalid_argument("the manufactured solution is 2D");
  const double h = spec.spacing();
  GridField f(spec);
  for (int i = 0; i < spec.points; ++i)
    for (int j = 0; j < spec.points; ++j)
      f.at(i, j) = manufactured_forcing_at(i * h, j * h, t, p);
  return f;
}

double estimate_order(double e_coarse, double e_fine) {
  if (!(e_coarse > 0.0) || !(e_fine > 0.0))
    throw std::invalid_argument("order needs positive errors");
  return std::log2(e_coarse / e_fine);
}

StudyResult run_temporal_study(const std::vector<long>& ns, int points,
                               double horizon, const ModelParams& params,
                               const SolveConfig& solve) {
  require_increasing(ns, "ns");
  if (!(horizon > 0.0)) throw std::invalid_argument("T must be positive");
  // rows are independent runs; spread them over the pool
  std::vector<std::future<double>> errors;
  for (long n : ns) {
    RunConfig cfg = forced_run(points, horizon / static_cast<double>(n), n,
                               params, solve);
    errors.push_back(
        std::async(std::launch::async, [cfg] { return run_error(cfg); }));
  }
  std::vector<ConvergenceRow> rows;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    ConvergenceRow r;
    r.n = ns[i];
    r.tau = horizon / static_cast<double>(ns[i]);
    r.points = points;
    r.error_l2 = errors[i].get();
    rows.push_back(r);
  }
  return assemble(std::move(rows));
}

StudyResult run_spatial_study(const std::vector<int>& ms, double tau,
                              double horizon, const ModelParams& params,
                              const SolveConfig& solve) {
  require_increasing(ms, "ms");
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
  if (!(horizon > 0.0)) throw std::invalid_argument("T must be positive");
  const long steps = std::lround(horizon / tau);
  if (steps < 1 || std::abs(static_cast<double>(steps) * tau - horizon) >
                       1e-9 * horizon)
    throw std::invalid_argument("T must be an integer multiple of tau");
  std::vector<std::future<double>> errors;
  for (int m : ms) {
    RunConfig cfg = forced_run(m, tau, steps, params, solve);
    errors.push_back(
        std::async(std::launch::async, [cfg] { return run_error(cfg); }));
  }
  std::vector<ConvergenceRow> rows;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    ConvergenceRow r;
    r.n = steps;
    r.tau = tau;
    r.points = ms[i];
    r.error_l2 = errors[i].get();
    rows.push_back(r);
  }
  return assemble(std::move(rows));
}

StudyResult run_study(const RunConfig& cfg) {
  if (!cfg.study) throw std::invalid_argument("config carries no study");
  const StudySpec& s = *cfg.study;
  if (s.kind == StudySpec::Kind::temporal)
    return run_temporal_study(s.ns, cfg.points, s.horizon, cfg.params,
                              cfg.solve);
  return run_spatial_study(s.ms, cfg.tau, s.horizon, cfg.params, cfg.solve);
}

std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
  std::string out = "N,tau,M,error_l2,order\n";
  for (const ConvergenceRow& r : rows) {
    out += std::to_string(r.n) + "," + csv_real(r.tau) + "," +
           std::to_string(r.points) + "," + csv_real(r.error_l2) + ",";
    if (r.has_order) out += csv_real(r.order);
    out += "\n";
  }
  return out;
}

}  // namespace sh
