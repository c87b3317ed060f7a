#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "sh/grid.hpp"
#include "test_support.hpp"

using namespace sh;
using test_support::random_field;
using test_support::rel_err;
using test_support::rel_linf;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Textbook stencil with explicit modulo wrap, kept independent of the
// production loops.
GridField brute_laplacian(const GridField& f) {
  const GridSpec& s = f.spec();
  const int m = s.points;
  const double h2 = s.spacing() * s.spacing();
  GridField out(s);
  if (s.dim == 2) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        out.at(i, j) = (f.at((i + 1) % m, j) + f.at((i + m - 1) % m, j) +
                        f.at(i, (j + 1) % m) + f.at(i, (j + m - 1) % m) -
                        4.0 * f.at(i, j)) /
                       h2;
  } else {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k)
          out.at(i, j, k) =
              (f.at((i + 1) % m, j, k) + f.at((i + m - 1) % m, j, k) +
               f.at(i, (j + 1) % m, k) + f.at(i, (j + m - 1) % m, k) +
               f.at(i, j, (k + 1) % m) + f.at(i, j, (k + m - 1) % m) -
               6.0 * f.at(i, j, k)) /
              h2;
  }
  return out;
}

GridField cyclic_shift(const GridField& f, int si, int sj, int sk = 0) {
  const GridSpec& s = f.spec();
  const int m = s.points;
  GridField out(s);
  if (s.dim == 2) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        out.at((i + si) % m, (j + sj) % m) = f.at(i, j);
  } else {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k)
          out.at((i + si) % m, (j + sj) % m, (k + sk) % m) = f.at(i, j, k);
  }
  return out;
}

GridField product_of_sines(const GridSpec& s, const std::vector<int>& modes,
                           const std::vector<double>& phases) {
  const double h = s.spacing();
  GridField f(s);
  const int m = s.points;
  auto wave = [&](int mode, double phase, int idx) {
    return std::sin(kTwoPi * mode * (idx * h) / s.length + phase);
  };
  if (s.dim == 2) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        f.at(i, j) = wave(modes[0], phases[0], i) * wave(modes[1], phases[1], j);
  } else {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k)
          f.at(i, j, k) = wave(modes[0], phases[0], i) *
                          wave(modes[1], phases[1], j) *
                          wave(modes[2], phases[2], k);
  }
  return f;
}

double axis_symbol(int mode, int m, double h) {
  const double s = std::sin(std::numbers::pi * mode / m);
  return -4.0 * s * s / (h * h);
}

}  // namespace

TEST_CASE("pairwise sum is exact on small integers and deterministic") {
  std::vector<double> v = {1, 2, 3, 4, 5};
  CHECK(pairwise_sum(v) == 15.0);
  CHECK(pairwise_sum({}) == 0.0);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> big(100000);
  for (auto& x : big) x = dist(rng);
  long double serial = 0.0L;
  for (double x : big) serial += x;
  const double s1 = pairwise_sum(big);
  const double s2 = pairwise_sum(big);
  CHECK(s1 == s2);
  CHECK(std::abs(s1 - static_cast<double>(serial)) <= 1e-10);
}

TEST_CASE("laplacian matches the brute-force periodic stencil") {
  for (int dim : {2, 3}) {
    for (int m : {8, 16}) {
      const GridSpec s{dim, m, dim == 2 ? kTwoPi : 5.5};
      const GridField f = random_field(s, 101 + dim + m);
      CHECK(rel_linf(laplacian(f), brute_laplacian(f)) <= 1e-14);
    }
  }
}

TEST_CASE("laplacian multiplies sin(2x)sin(2y) by -8 sin^2(h)/h^2") {
  for (int m : {8, 16, 64}) {
    const GridSpec s{2, m, kTwoPi};
    const double h = s.spacing();
    const GridField f = product_of_sines(s, {2, 2}, {0.0, 0.0});
    const double factor = -8.0 * std::sin(h) * std::sin(h) / (h * h);
    GridField want(s);
    for (std::size_t i = 0; i < f.size(); ++i) want[i] = factor * f[i];
    CHECK(rel_linf(laplacian(f), want) <= 1e-12);
  }
}

TEST_CASE("laplacian acts by the discrete symbol on every Fourier mode") {
  for (int dim : {2, 3}) {
    for (int m : {8, 16}) {
      for (double L : {kTwoPi, 7.25}) {
        const GridSpec s{dim, m, L};
        const double h = s.spacing();
        for (int ma : {1, 2, 3, 5}) {
          for (int mb : {1, 3}) {
            std::vector<int> modes = {ma, mb, 2};
            std::vector<double> phases = {0.3, 1.1, -0.4};
            modes.resize(dim);
            phases.resize(dim);
            const GridField f = product_of_sines(s, modes, phases);
            double lambda = 0.0;
            for (int a = 0; a < dim; ++a) lambda += axis_symbol(modes[a], m, h);
            GridField want(s);
            for (std::size_t i = 0; i < f.size(); ++i) want[i] = lambda * f[i];
            CHECK(rel_linf(laplacian(f), want) <= 1e-12);
          }
        }
      }
    }
  }
}

TEST_CASE("inner product of sin(2x)sin(2y) with itself is pi^2 on (0,2pi)^2") {
  for (int m : {5, 8, 16, 33}) {
    const GridSpec s{2, m, kTwoPi};
    const GridField v = product_of_sines(s, {2, 2}, {0.0, 0.0});
    CHECK(rel_err(inner_product(v, v), std::numbers::pi * std::numbers::pi) <=
          1e-12);
  }
  // M = 4 aliases mode 2 to the zero field; the closed form does not apply.
  const GridSpec s4{2, 4, kTwoPi};
  const GridField v4 = product_of_sines(s4, {2, 2}, {0.0, 0.0});
  CHECK(field_norm(v4, Norm::linf) <= 1e-15);
}

TEST_CASE("inner product matches a long-double serial reference") {
  for (int dim : {2, 3}) {
    const GridSpec s{dim, 8, 3.0};
    const GridField v = random_field(s, 11 + dim);
    const GridField w = random_field(s, 23 + dim);
    long double acc = 0.0L;
    for (std::size_t i = 0; i < v.size(); ++i) acc += v[i] * w[i];
    acc *= s.cell_volume();
    CHECK(rel_err(inner_product(v, w), static_cast<double>(acc)) <= 1e-14);
  }
}

TEST_CASE("summation-by-parts: inner(-lap v, w) equals sum of difference inners") {
  for (int dim : {2, 3}) {
    for (int m : {8, 16}) {
      const GridSpec s{dim, m, 4.5};
      for (int trial = 0; trial < 20; ++trial) {
        const GridField v = random_field(s, 100 * dim + m + trial);
        const GridField w = random_field(s, 200 * dim + m + trial);
        const double lhs = -inner_product(laplacian(v), w);
        const auto dv = forward_differences(v);
        const auto dw = forward_differences(w);
        double rhs = 0.0;
        for (int a = 0; a < dim; ++a) rhs += inner_product(dv[a], dw[a]);
        CHECK(rel_err(lhs, rhs) <= 1e-12);
      }
    }
  }
}

TEST_CASE("(1+lap)^2 is the square of the self-adjoint (1+lap)") {
  for (int dim : {2, 3}) {
    const GridSpec s{dim, 8, kTwoPi};
    for (int trial = 0; trial < 20; ++trial) {
      const GridField v = random_field(s, 31 + trial + dim);
      const GridField w = random_field(s, 57 + trial + dim);
      const double lhs = inner_product(one_plus_laplacian_squared(v), w);
      const double rhs =
          inner_product(one_plus_laplacian(v), one_plus_laplacian(w));
      CHECK(rel_err(lhs, rhs) <= 1e-12);
    }
  }
}

TEST_CASE("laplacian is linear") {
  const GridSpec s{2, 16, 2.0};
  const GridField v = random_field(s, 3);
  const GridField w = random_field(s, 4);
  const double a = 1.7, b = -0.3;
  GridField combo(s);
  for (std::size_t i = 0; i < v.size(); ++i) combo[i] = a * v[i] + b * w[i];
  const GridField lv = laplacian(v);
  const GridField lw = laplacian(w);
  GridField want(s);
  for (std::size_t i = 0; i < v.size(); ++i) want[i] = a * lv[i] + b * lw[i];
  CHECK(rel_linf(laplacian(combo), want) <= 1e-13);
}

TEST_CASE("laplacian commutes with cyclic shifts bitwise") {
  for (int dim : {2, 3}) {
    const GridSpec s{dim, 8, 1.0};
    const GridField v = random_field(s, 97 + dim);
    const GridField a = laplacian(cyclic_shift(v, 3, 5, 2));
    const GridField b = cyclic_shift(laplacian(v), 3, 5, 2);
    CHECK(a == b);
  }
}

TEST_CASE("norms: l2 is sqrt(inner), l4 and linf match references") {
  const GridSpec s{2, 12, 3.25};
  const GridField v = random_field(s, 42);
  CHECK(field_norm(v, Norm::l2) == std::sqrt(inner_product(v, v)));

  long double quart = 0.0L;
  double maxabs = 0.0;
  for (double x : v.values()) {
    quart += static_cast<long double>(x) * x * x * x;
    maxabs = std::max(maxabs, std::abs(x));
  }
  const double l4ref = static_cast<double>(
      std::pow(static_cast<long double>(s.cell_volume()) * quart, 0.25L));
  CHECK(rel_err(field_norm(v, Norm::l4), l4ref) <= 1e-14);
  CHECK(field_norm(v, Norm::linf) == maxabs);
}

TEST_CASE("forward difference of sin(2x) has the shifted-cosine closed form") {
  const GridSpec s{2, 32, kTwoPi};
  const double h = s.spacing();
  GridField f(s);
  for (int i = 0; i < s.points; ++i)
    for (int j = 0; j < s.points; ++j) f.at(i, j) = std::sin(2.0 * i * h);
  const auto d = forward_differences(f);
  GridField want(s);
  for (int i = 0; i < s.points; ++i)
    for (int j = 0; j < s.points; ++j)
      want.at(i, j) = 2.0 * std::sin(h) / h * std::cos(2.0 * i * h + h);
  CHECK(rel_linf(d[0], want) <= 1e-13);
  CHECK(field_norm(d[1], Norm::linf) == 0.0);
}

TEST_CASE("nonlinear term evaluates u^3 - g u^2 - eps u pointwise") {
  const GridSpec s{2, 8, 1.0};
  const GridField u(s, 2.0);
  const GridField out = nonlinear_term(u, {1.0, 0.25});
  for (double x : out.values()) CHECK(x == 3.5);
}

TEST_CASE("grid validation rejects bad specs and mismatched fields") {
  CHECK_THROWS_AS(GridField(GridSpec{4, 8, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(GridField(GridSpec{2, 3, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(GridField(GridSpec{2, 8, 0.0}), std::invalid_argument);
  const GridField a{GridSpec{2, 8, 1.0}};
  const GridField b{GridSpec{2, 16, 1.0}};
  CHECK_THROWS_AS(inner_product(a, b), std::invalid_argument);
}
