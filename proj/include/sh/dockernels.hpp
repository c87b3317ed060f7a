#pragma once

#include <span>
#include <vector>

namespace sh {

// Orthogonal-convolution kernels theta_j. They invert the third-order
// backward-difference weights: sum_i theta_{d-i} b_i = delta_{d0}.
struct DocKernels {
  double tau = 0.0;
  std::vector<double> theta;  // theta_0 .. theta_m
};

// Production path: seeds 6 tau/11 and 42 tau/121, then the two-term
// recursion 11 theta_j - 7 theta_{j-1} + 2 theta_{j-2} = 0.
DocKernels doc_kernels(int m, double tau);

// Closed form through the conjugate root pair (7 +- sqrt(39) i)/22 of the
// characteristic polynomial; kept for cross-checking the recursion. The
// imaginary residue of the two-term sum lands in *imag_residue when
// non-null.
double doc_kernel_closed_form(int j, double tau,
                              double* imag_residue = nullptr);

// max_{0<=d<=max_offset} |sum_i theta_{d-i} b_i - delta_{d0}|.
double doc_orthogonality_deviation(int max_offset, double tau);

struct DocBoundsReport {
  double min_pointwise_slack;  // min_j of (2/11)^{j/2} tau - |theta_j|
  double sum_slack;            // 22 tau/9 - sum_j |theta_j|
};

DocBoundsReport doc_bounds(int m, double tau);

// 2 sum_k w_k sum_{j<=k} b_{k-j} w_j over the given window (positive
// semidefinite for any real sequence).
double bdf_form(std::span<const double> w, double tau);

// sum_k w_k sum_{j<=k} theta_{k-j} w_j (also positive semidefinite).
double doc_form(std::span<const double> w, double tau);

struct DecompositionSides {
  double lhs;
  double rhs;
};

// Both sides of the telescoping split of w_n (11 w_n - 7 w_{n-1} + 2 w_{n-2})
// used to prove the b-form nonnegative; lhs and rhs agree identically.
DecompositionSides decomposition_identity(double w_nm2, double w_nm1,
                                          double w_n);

}  // namespace sh
