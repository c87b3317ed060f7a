#include "sh/dockernels.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "sh/bdf.hpp"

namespace sh {

namespace {

void require_tau(double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("time step must be positive");
}

}  // namespace

DocKernels doc_kernels(int m, double tau) {
  require_tau(tau);
  if (m < 0) throw std::invalid_argument("kernel count must be >= 0");
  // The kernels are exactly linear in tau, so run the recursion on the
  // tau-free coefficients and scale on materialisation; that keeps
  // theta_j(tau) == tau * theta_j(1) bitwise.
  std::vector<double> c;
  c.reserve(m + 1);
  c.push_back(6.0 / 11.0);
  if (m >= 1) c.push_back(42.0 / 121.0);
  for (int j = 2; j <= m; ++j)
    c.push_back((7.0 * c[j - 1] - 2.0 * c[j - 2]) / 11.0);
  DocKernels k;
  k.tau = tau;
  k.theta.reserve(m + 1);
  for (double x : c) k.theta.push_back(tau * x);
  return k;
}

double doc_kernel_closed_form(int j, double tau, double* imag_residue) {
  require_tau(tau);
  if (j < 0) throw std::invalid_argument("kernel index must be >= 0");
  const double s39 = std::sqrt(39.0);
  const std::complex<double> root_a(7.0 / 22.0, -s39 / 22.0);
  const std::complex<double> root_b(7.0 / 22.0, s39 / 22.0);
  const std::complex<double> coef_a(39.0 / 78.0, 7.0 * s39 / 78.0);
  const std::complex<double> coef_b(39.0 / 78.0, -7.0 * s39 / 78.0);
  const std::complex<double> sum = 6.0 * tau / 11.0 *
                                   (coef_a * std::pow(root_a, j) +
                                    coef_b * std::pow(root_b, j));
  if (imag_residue) *imag_residue = std::abs(sum.imag());
  return sum.real();
}

double doc_orthogonality_deviation(int max_offset, double tau) {
  const DocKernels k = doc_kernels(max_offset, tau);
  const BdfWeights b = BdfWeights::make(tau);
  double dev = 0.0;
  for (int d = 0; d <= max_offset; ++d) {
    double s = k.theta[d] * b.b0;
    if (d >= 1) s += k.theta[d - 1] * b.b1;
    if (d >= 2) s += k.theta[d - 2] * b.b2;
    dev = std::max(dev, std::abs(s - (d == 0 ? 1.0 : 0.0)));
  }
  return dev;
}

DocBoundsReport doc_bounds(int m, double tau) {
  const DocKernels k = doc_kernels(m, tau);
  const double decay = std::sqrt(2.0 / 11.0);
  double min_slack = std::numeric_limits<double>::infinity();
  double total = 0.0;
  double envelope = tau;  // (2/11)^{j/2} tau
  for (int j = 0; j <= m; ++j) {
    min_slack = std::min(min_slack, envelope - std::abs(k.theta[j]));
    total += std::abs(k.theta[j]);
    envelope *= decay;
  }
  return {min_slack, 22.0 * tau / 9.0 - total};
}

double bdf_form(std::span<const double> w, double tau) {
  const BdfWeights b = BdfWeights::make(tau);
  const double kernels[3] = {b.b0, b.b1, b.b2};
  double q = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    double inner = 0.0;
    for (std::size_t off = 0; off < 3 && off <= k; ++off)
      inner += kernels[off] * w[k - off];
    q += w[k] * inner;
  }
  return 2.0 * q;
}

double doc_form(std::span<const double> w, double tau) {
  if (w.empty()) return 0.0;
  const DocKernels k = doc_kernels(static_cast<int>(w.size()) - 1, tau);
  double q = 0.0;
  for (std::size_t n = 0; n < w.size(); ++n) {
    double inner = 0.0;
    for (std::size_t j = 0; j <= n; ++j) inner += k.theta[n - j] * w[j];
    q += w[n] * inner;
  }
  return q;
}

DecompositionSides decomposition_identity(double w_nm2, double w_nm1,
                                          double w_n) {
  DecompositionSides out;
  out.lhs = w_n * (11.0 * w_n - 7.0 * w_nm1 + 2.0 * w_nm2);
  const double head = w_n * w_n + (2.0 / 9.0) * w_nm1 * w_nm1;
  const double tail = w_nm1 * w_nm1 + (2.0 / 9.0) * w_nm2 * w_nm2;
  const double cross = w_n + w_nm2;
  const double diff = w_n - w_nm1;
  out.rhs = 4.5 * head - 4.5 * tail + 2.0 * w_n * w_n + cross * cross +
            3.5 * diff * diff;
  return out;
}

}  // namespace sh
