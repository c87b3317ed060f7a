#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sh {

// Uniform grid on the periodic box (0, L)^dim with M samples per axis.
struct GridSpec {
  int dim = 2;          // 2 or 3
  int points = 0;       // samples per axis (M)
  double length = 0.0;  // box edge length (L)

  double spacing() const { return length / points; }
  std::size_t node_count() const;
  double cell_volume() const;  // spacing()^dim, the quadrature weight
  double box_measure() const;  // length^dim
  bool operator==(const GridSpec&) const = default;
};

// Throws std::invalid_argument unless dim is 2 or 3, M >= 4 and L > 0.
void validate(const GridSpec& spec);

// Scalar field sampled at the nodes, row-major: the value at flat index
// (i*M + j) (resp. (i*M + j)*M + k) is the sample at (i*h, j*h[, k*h]).
class GridField {
 public:
  GridField() = default;
  explicit GridField(const GridSpec& spec, double fill = 0.0);

  const GridSpec& spec() const { return spec_; }
  std::size_t size() const { return values_.size(); }
  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return {values_}; }
  std::span<double> values() { return {values_}; }

  double& at(int i, int j);
  double at(int i, int j) const;
  double& at(int i, int j, int k);
  double at(int i, int j, int k) const;

  bool operator==(const GridField&) const = default;

 private:
  GridSpec spec_;
  std::vector<double> values_;
};

struct ModelParams {
  double g = 0.0;    // quadratic coefficient
  double eps = 0.0;  // linear bifurcation parameter
  bool operator==(const ModelParams&) const = default;
};

// Cascade (pairwise) summation with a fixed split tree: the result depends
// only on the values and their order, never on chunking or threading.
double pairwise_sum(std::span<const double> x);

// Second-order centred periodic Laplacian.
GridField laplacian(const GridField& f);

GridField one_plus_laplacian(const GridField& f);

// (1 + lap)^2 f, realised by applying one_plus_laplacian twice.
GridField one_plus_laplacian_squared(const GridField& f);

// Forward one-sided differences (f(x+h e_a) - f(x))/h, one field per axis.
std::vector<GridField> forward_differences(const GridField& f);

// Discrete L2 pairing h^dim * sum(v w), accumulated pairwise.
double inner_product(const GridField& v, const GridField& w);

enum class Norm { l2, l4, linf };

// l2 is computed exactly as sqrt(inner_product(v, v)).
double field_norm(const GridField& v, Norm which);

// f(u) = u^3 - g u^2 - eps u, applied pointwise.
GridField nonlinear_term(const GridField& u, const ModelParams& p);

}  // namespace sh
