#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "sh/bdf.hpp"
#include "sh/dockernels.hpp"

using namespace sh;

TEST_CASE("kernel seeds and the first recursion step") {
  for (double tau : {1e-3, 1.0, 10.0}) {
    const DocKernels k = doc_kernels(2, tau);
    CHECK(std::abs(k.theta[0] - 6.0 * tau / 11.0) <= 2e-16 * tau);
    CHECK(std::abs(k.theta[1] - 42.0 * tau / 121.0) <= 2e-16 * tau);
    const double want2 = 162.0 * tau / 1331.0;
    CHECK(std::abs(k.theta[2] - want2) <= 1e-15 * want2);
  }
}

TEST_CASE("recursion residual stays at rounding level out to j = 200") {
  for (double tau : {1e-3, 1.0, 10.0}) {
    const DocKernels k = doc_kernels(200, tau);
    for (int j = 2; j <= 200; ++j) {
      const double r =
          11.0 * k.theta[j] - 7.0 * k.theta[j - 1] + 2.0 * k.theta[j - 2];
      CHECK(std::abs(r) <= 1e-13 * std::max(1.0, tau));
    }
  }
}

TEST_CASE("closed form reproduces the recursion with tiny imaginary residue") {
  for (double tau : {1e-3, 1.0, 10.0}) {
    const DocKernels k = doc_kernels(200, tau);
    for (int j = 0; j <= 200; ++j) {
      double residue = -1.0;
      const double v = doc_kernel_closed_form(j, tau, &residue);
      CHECK(std::abs(v - k.theta[j]) <= 1e-12 * std::max(1.0, tau));
      CHECK(residue <= 1e-14 * tau);
    }
  }
}

TEST_CASE("kernels scale linearly in tau") {
  const DocKernels unit = doc_kernels(60, 1.0);
  for (double tau : {1e-3, 0.37, 10.0}) {
    const DocKernels k = doc_kernels(60, tau);
    for (int j = 0; j <= 60; ++j) {
      const double want = tau * unit.theta[j];
      CHECK(std::abs(k.theta[j] - want) <= 1e-15 * std::abs(want));
      CHECK(k.theta[j] == want);  // exact by construction
    }
  }
}

TEST_CASE("convolving kernels against the difference weights gives delta") {
  for (double tau : {1e-3, 1.0, 10.0})
    CHECK(doc_orthogonality_deviation(200, tau) <= 1e-13);
}

TEST_CASE("decay envelope and summability bounds hold with slack") {
  for (double tau : {1e-3, 1.0, 10.0}) {
    const DocBoundsReport r = doc_bounds(1000, tau);
    CHECK(r.min_pointwise_slack >= 0.0);
    CHECK(r.sum_slack >= 0.0);
  }
}

TEST_CASE("b-form of a single entry is 11/3 at tau = 1") {
  const std::vector<double> w = {1.0};
  const double q = bdf_form(w, 1.0);
  CHECK(std::abs(q - 11.0 / 3.0) <= 1e-15 * (11.0 / 3.0));
}

TEST_CASE("b-form matches a dense symmetrized-matrix evaluation") {
  std::mt19937_64 rng(5150);
  std::normal_distribution<double> dist(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 50;
    std::vector<double> w(n);
    for (auto& x : w) x = dist(rng);
    const double tau = 0.25 + 0.5 * (trial % 3);
    const BdfWeights b = BdfWeights::make(tau);
    // dense S = T + T^T with T lower-triangular Toeplitz on (b0, b1, b2)
    std::vector<std::vector<double>> s(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const long off = static_cast<long>(i) - static_cast<long>(j);
        double t = 0.0;
        if (off == 0) t = b.b0;
        if (off == 1) t = b.b1;
        if (off == 2) t = b.b2;
        s[i][j] += t;
        s[j][i] += t;
      }
    double dense = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) dense += w[i] * s[i][j] * w[j];
    const double q = bdf_form(w, tau);
    CHECK(std::abs(q - dense) <= 1e-12 * std::max(1.0, std::abs(dense)));
  }
}

TEST_CASE("both quadratic forms are nonnegative on random sequences") {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> dist(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng() % 50;
    std::vector<double> w(n);
    double wsq = 0.0;
    for (auto& x : w) {
      x = dist(rng);
      wsq += x * x;
    }
    const double tau = trial % 2 ? 1.0 : 0.05;
    CHECK(bdf_form(w, tau) >= -1e-12 * wsq / tau);
    CHECK(doc_form(w, tau) >= -1e-12 * wsq * tau);
  }
}

TEST_CASE("telescoping decomposition is an identity") {
  {
    const auto [lhs, rhs] = decomposition_identity(0.0, 0.0, 1.0);
    CHECK(lhs == 11.0);
    CHECK(rhs == 11.0);
  }
  {
    const auto [lhs, rhs] = decomposition_identity(1.0, 1.0, 1.0);
    CHECK(lhs == 6.0);
    CHECK(rhs == 6.0);
  }
  std::mt19937_64 rng(321);
  std::normal_distribution<double> dist(0.0, 2.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double a = dist(rng), b = dist(rng), c = dist(rng);
    const auto [lhs, rhs] = decomposition_identity(a, b, c);
    const double scale =
        1.0 + std::max({a * a, b * b, c * c, std::abs(lhs)});
    CHECK(std::abs(lhs - rhs) <= 1e-13 * scale);
  }
}
