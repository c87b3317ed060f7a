#include "sh/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace sh {

namespace {

// lead x + (1+lap)^2 x + diag x
GridField apply_linearized(const GridField& x, double lead,
                           const GridField& diag) {
  GridField out = one_plus_laplacian_squared(x);
  for (std::size_t i = 0; i < x.size(); ++i)
    out[i] += lead * x[i] + diag[i] * x[i];
  return out;
}

double mean_value(const GridField& f) {
  return pairwise_sum(f.values()) / static_cast<double>(f.size());
}

// largest value of (1 + lambda_h)^2 over the grid; this is the factor by
// which applying the operator amplifies rounding noise
double symbol_peak(const GridSpec& spec) {
  const double h = spec.spacing();
  double axis_max = 0.0;
  for (int k = 0; k < spec.points; ++k) {
    const double s = std::sin(std::numbers::pi * k / spec.points);
    axis_max = std::max(axis_max, 4.0 * s * s / (h * h));
  }
  const double extreme = 1.0 - spec.dim * axis_max;
  return std::max(extreme * extreme, 1.0);
}

// smallest residual the evaluation itself can resolve in double precision;
// below this, iterating further only churns rounding noise
double evaluation_floor(double lead, double peak, double x_norm,
                        double rhs_norm) {
  return 8.0 * std::numeric_limits<double>::epsilon() *
         ((lead + peak) * x_norm + rhs_norm);
}

GridField solve_pcg(const GridField& rhs, double lead, const GridField& diag,
                    const SolveConfig& cfg, SpectralSolver& spectral);

GridField solve_split_iteration(const GridField& rhs, double lead,
                                const GridField& diag, const SolveConfig& cfg,
                                SpectralSolver& spectral) {
  GridField x(rhs.spec());
  const double rhs_norm = field_norm(rhs, Norm::l2);
  if (rhs_norm == 0.0) return x;
  double shift = mean_value(diag);
  // only the preconditioner: the defect iteration still converges to the
  // true solution, so clamping cannot bias the answer
  if (shift < -0.5 * lead) shift = -0.5 * lead;
  spectral.apply_inverse(rhs, lead, shift, x);
  const double peak = symbol_peak(rhs.spec());
  GridField r(rhs.spec());
  GridField corr(rhs.spec());
  double prev = std::numeric_limits<double>::infinity();
  for (int it = 0; it < cfg.max_inner_iters; ++it) {
    const GridField jx = apply_linearized(x, lead, diag);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = rhs[i] - jx[i];
    const double rn = field_norm(r, Norm::l2);
    const double tol =
        std::max(1e-12 * rhs_norm,
                 evaluation_floor(lead, peak, field_norm(x, Norm::l2), rhs_norm));
    if (rn <= tol) break;
    // the split contracts only while the diagonal fluctuation stays below
    // the symbol floor; once it stalls, finish with conjugate gradients
    if (!std::isfinite(rn) || rn > 0.9 * prev)
      return solve_pcg(rhs, lead, diag, cfg, spectral);
    prev = rn;
    spectral.apply_inverse(r, lead, shift, corr);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += corr[i];
  }
  return x;
}

GridField solve_pcg(const GridField& rhs, double lead, const GridField& diag,
                    const SolveConfig& cfg, SpectralSolver& spectral) {
  GridField x(rhs.spec());
  const double rhs_norm = field_norm(rhs, Norm::l2);
  if (rhs_norm == 0.0) return x;
  double shift = mean_value(diag);
  if (shift < -0.5 * lead) shift = -0.5 * lead;
  const double peak = symbol_peak(rhs.spec());
  GridField r = rhs;
  GridField z(rhs.spec());
  spectral.apply_inverse(r, lead, shift, z);
  GridField p = z;
  double rz = inner_product(r, z);
  for (int it = 0; it < cfg.max_inner_iters; ++it) {
    const double tol =
        std::max(1e-12 * rhs_norm,
                 evaluation_floor(lead, peak, field_norm(x, Norm::l2), rhs_norm));
    if (field_norm(r, Norm::l2) <= tol) break;
    const GridField ap = apply_linearized(p, lead, diag);
    const double denom = inner_product(p, ap);
    if (denom == 0.0) break;
    const double alpha = rz / denom;
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    spectral.apply_inverse(r, lead, shift, z);
    const double rz_next = inner_product(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = z[i] + beta * p[i];
  }
  return x;
}

}  // namespace

GridField scheme_residual(const GridField& w, const GridField& rhs_g,
                          double lead_weight, const ModelParams& p,
                          const GridField* forcing, bool cubic_terms) {
  GridField out = one_plus_laplacian_squared(w);
  const std::size_t n = w.size();
  const double* wv = w.data();
  const double* gv = rhs_g.data();
  const double* fv = forcing ? forcing->data() : nullptr;
  double* o = out.data();
  for (std::size_t i = 0; i < n; ++i) {
    const double x = wv[i];
    const double f =
        cubic_terms ? x * x * x - p.g * x * x - p.eps * x : -p.eps * x;
    o[i] += lead_weight * x - gv[i] + f;
    if (fv) o[i] -= fv[i];
  }
  return out;
}

GridField solve_linearized(const GridField& rhs, double lead_weight,
                           const GridField& diag, const SolveConfig& cfg,
                           SpectralSolver& spectral) {
  return cfg.linear_mode == LinearMode::fourier_direct
             ? solve_split_iteration(rhs, lead_weight, diag, cfg, spectral)
             : solve_pcg(rhs, lead_weight, diag, cfg, spectral);
}

NewtonResult solve_implicit_level(const GridField& initial_guess,
                                  const GridField& rhs_g, double lead_weight,
                                  const SolveConfig& cfg, const ModelParams& p,
                                  const GridField* forcing,
                                  SpectralSolver& spectral) {
  GridField w = initial_guess;
  GridField best = w;
  double best_rn = std::numeric_limits<double>::infinity();
  StepReport rep;
  const double peak = symbol_peak(w.spec());
  const double rhs_norm = field_norm(rhs_g, Norm::l2);
  for (int it = 1; it <= cfg.max_newton_iters; ++it) {
    const GridField res =
        scheme_residual(w, rhs_g, lead_weight, p, forcing, cfg.cubic_terms);
    const double rn = field_norm(res, Norm::l2);
    rep.residual_history.push_back(rn);
    rep.newton_iters = it;
    if (rn < best_rn) {
      best_rn = rn;
      best = w;
    }
    // on fine grids the operator's rounding floor sits above any fixed
    // tolerance, so accept once the evaluation itself cannot resolve better
    const double tol =
        std::max(cfg.abs_tol, evaluation_floor(lead_weight, peak,
                                               field_norm(w, Norm::l2),
                                               rhs_norm));
    if (rn <= tol) {
      rep.final_residual_l2 = rn;
      return {std::move(w), std::move(rep), true};
    }
    if (it == cfg.max_newton_iters) break;
    GridField diag(w.spec());
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double x = w[i];
      diag[i] = cfg.cubic_terms ? 3.0 * x * x - 2.0 * p.g * x - p.eps : -p.eps;
    }
    GridField neg_res(res.spec());
    for (std::size_t i = 0; i < res.size(); ++i) neg_res[i] = -res[i];
    const GridField delta =
        solve_linearized(neg_res, lead_weight, diag, cfg, spectral);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += delta[i];
  }
  rep.guard_flags |= kGuardConvergence;
  rep.final_residual_l2 = best_rn;
  return {std::move(best), std::move(rep), false};
}

NewtonResult newton_step_solve(const TimeHistory& hist, long level,
                               const SolveConfig& cfg, const ModelParams& p,
                               const GridField* phi0, const GridField* phi1,
                               const GridField* forcing,
                               SpectralSolver& spectral) {
  const GridField rhs_g = lagged_rhs(hist, level, phi0, phi1);
  const double lead = BdfWeights::make(hist.tau()).lead_weight(level);
  GridField guess;
  if (hist.stored() == 3) {
    guess = GridField(hist.spec());
    const GridField& h0 = hist.from_newest(0);
    const GridField& h1 = hist.from_newest(1);
    const GridField& h2 = hist.from_newest(2);
    for (std::size_t i = 0; i < guess.size(); ++i)
      guess[i] = 3.0 * h0[i] - 3.0 * h1[i] + h2[i];
  } else {
    guess = hist.from_newest(0);
  }
  return solve_implicit_level(guess, rhs_g, lead, cfg, p, forcing, spectral);
}

StepConstraints check_step_constraints(double tau, const ModelParams& p) {
  if (!(tau > 0.0)) throw std::invalid_argument("time step must be positive");
  StepConstraints c;
  const double s = p.g * p.g + p.eps;
  const double inf = std::numeric_limits<double>::infinity();
  c.tau_solvability = s > 0.0 ? 1.5 / s : inf;
  c.tau_solvability_level1 = s > 0.0 ? 2.0 / s : inf;
  c.tau_solvability_level2 = c.tau_solvability;
  c.tau_solvability_level3 = s > 0.0 ? 11.0 / (6.0 * s) : inf;
  const double e = 2.0 * p.g * p.g + 1.5 * p.eps;
  c.tau_energy = e > 0.0 ? 1.0 / e : inf;
  c.solvability_ok = tau < c.tau_solvability;
  c.energy_ok = tau <= c.tau_energy;
  return c;
}

}  // namespace sh
