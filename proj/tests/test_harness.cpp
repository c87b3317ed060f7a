#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "sh/harness.hpp"
#include "sh/sim.hpp"

using namespace sh;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

TEST_CASE("exact solution evaluates the separable cosine profile") {
  CHECK(exact_solution_at(kPi / 4.0, kPi / 4.0, 0.0) == 1.0);
  CHECK(exact_solution_at(kPi / 4.0, kPi / 4.0, 10.0) ==
        doctest::Approx(-0.8390715).epsilon(1e-6));
  const GridSpec s{2, 16, kTwoPi};
  const GridField quiet = exact_solution(s, kPi / 2.0);
  for (double v : quiet.values()) CHECK(std::abs(v) <= 1e-15);
  const GridField start = exact_solution(s, 0.0);
  CHECK(start.at(2, 2) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(exact_solution({3, 8, kTwoPi}, 0.0), std::invalid_argument);
}

TEST_CASE("manufactured forcing matches hand substitution") {
  const ModelParams p{1.0, 0.25};
  // u = 1 there: forcing = 49 + f(1) = 49 + (1 - g - eps)
  CHECK(manufactured_forcing_at(kPi / 4.0, kPi / 4.0, 0.0, p) == 48.75);
  CHECK(manufactured_forcing_at(0.0, 1.3, 2.2, p) == 0.0);
  CHECK(std::abs(manufactured_forcing_at(kPi / 4.0, kPi / 4.0, kPi / 2.0, p) -
                 (-1.0)) <= 1e-14);
  const GridSpec s{2, 8, kTwoPi};
  const GridField f = manufactured_forcing(s, 0.0, p);
  CHECK(f.at(1, 1) ==
        doctest::Approx(manufactured_forcing_at(kTwoPi / 8.0, kTwoPi / 8.0,
                                                0.0, p)));
}

TEST_CASE("order estimation is a base-2 logarithm") {
  CHECK(estimate_order(8.0, 1.0) == 3.0);
  CHECK(estimate_order(1.0, 1.0) == 0.0);
  CHECK(estimate_order(4.0, 16.0) == -2.0);  // divergence reads negative
  CHECK(estimate_order(5.699e-2, 7.321e-3) ==
        doctest::Approx(2.96).epsilon(0.005));
  CHECK_THROWS_AS(estimate_order(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(estimate_order(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("synthetic cubic decay reads as order three everywhere") {
  const double c = 0.7;
  for (long n : {10L, 20L, 40L}) {
    const double coarse = c / (static_cast<double>(n) * n * n);
    const double fine = c / (8.0 * n * n * n);
    CHECK(std::abs(estimate_order(coarse, fine) - 3.0) <= 1e-13);
  }
  // halving h with errors exactly quartered reads as order two
  CHECK(estimate_order(0.3, 0.075) == 2.0);
}

TEST_CASE("startup step error contracts quadratically when tau halves") {
  // one forced step from exact data, started at t0 = 1 so the time
  // derivatives of the target do not degenerate; below tau ~ 0.4 the
  // tau-independent spatial floor (~1e-3 at this resolution) takes over,
  // so the ratio is probed on the two largest steps
  const GridSpec spec{2, 256, kTwoPi};
  const ModelParams p{1.0, 0.25};
  const double t0 = 1.0;
  SpectralSolver spectral(spec);
  std::vector<double> errs;
  for (double tau : {1.6, 0.8}) {
    const GridField phi0 = exact_solution(spec, t0);
    const GridField f0 = manufactured_forcing(spec, t0, p);
    const StartupFields st =
        initial_level(phi0, tau, p, StartupSign::corrected, &f0);
    TimeHistory hist(spec, tau);
    hist.push(st.u0);
    const GridField f1 = manufactured_forcing(spec, t0 + tau, p);
    const NewtonResult r = newton_step_solve(hist, 1, SolveConfig{}, p,
                                             &st.phi0, &st.phi1, &f1, spectral);
    REQUIRE(r.converged);
    const GridField want = exact_solution(spec, t0 + tau);
    GridField diff = r.solution;
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= want[i];
    errs.push_back(field_norm(diff, Norm::l2));
  }
  CHECK(errs[0] / errs[1] >= 3.0);
  CHECK(errs[0] / errs[1] <= 4.8);
  CHECK(errs[1] <= 1e-2);
}

TEST_CASE("temporal study runs rows concurrently and reproducibly") {
  const std::vector<long> ns{4, 8};
  const StudyResult a =
      run_temporal_study(ns, 32, 0.5, {1.0, 0.25}, SolveConfig{});
  const StudyResult b =
      run_temporal_study(ns, 32, 0.5, {1.0, 0.25}, SolveConfig{});
  REQUIRE(a.rows.size() == 2);
  CHECK(a.rows[0].n == 4);
  CHECK(a.rows[0].tau == 0.125);
  CHECK(a.rows[0].points == 32);
  CHECK(a.rows[0].error_l2 > 0.0);
  CHECK_FALSE(a.rows[0].has_order);
  CHECK(a.rows[1].has_order);
  CHECK(convergence_csv(a.rows) == convergence_csv(b.rows));
  CHECK(a.summary == b.summary);
  CHECK(a.summary.find("error_l2") != std::string::npos);
  CHECK_THROWS_AS(
      run_temporal_study({8, 4}, 32, 0.5, {1.0, 0.25}, SolveConfig{}),
      std::invalid_argument);
}

TEST_CASE("spatial study shows second-order refinement") {
  const StudyResult r =
      run_spatial_study({8, 16}, 0.05, 0.2, {1.0, 0.25}, SolveConfig{});
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[0].n == 4);  // steps = T / tau
  CHECK(r.rows[1].points == 16);
  CHECK(r.rows[1].error_l2 < r.rows[0].error_l2);
  CHECK(r.rows[1].has_order);
  CHECK(r.rows[1].order > 1.0);
  CHECK_THROWS_AS(
      run_spatial_study({8, 16}, 0.3, 1.0, {1.0, 0.25}, SolveConfig{}),
      std::invalid_argument);  // T not a multiple of tau
}

TEST_CASE("study dispatch follows the config and csv pins its shape") {
  RunConfig cfg;
  cfg.dim = 2;
  cfg.points = 16;
  cfg.length = kTwoPi;
  cfg.params = {1.0, 0.25};
  cfg.ic = InitialKind::example1;
  cfg.forcing = true;
  cfg.study = StudySpec{StudySpec::Kind::temporal, {2, 4}, {}, 0.25};
  const StudyResult r = run_study(cfg);
  REQUIRE(r.rows.size() == 2);
  const std::string csv = convergence_csv(r.rows);
  CHECK(csv.rfind("N,tau,M,error_l2,order\n", 0) == 0);
  // first row ends with an empty order cell
  const std::size_t first_end = csv.find('\n', csv.find('\n') + 1);
  REQUIRE(first_end != std::string::npos);
  CHECK(csv[first_end - 1] == ',');

  RunConfig bare;
  CHECK_THROWS_AS(run_study(bare), std::invalid_argument);
}
