#include "sh/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sh {

namespace {

constexpr std::size_t kLeaf = 32;

double sum_range(const double* x, std::size_t n) {
  if (n <= kLeaf) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t half = n / 2;
  return sum_range(x, half) + sum_range(x + half, n - half);
}

double dot_range(const double* a, const double* b, std::size_t n) {
  if (n <= kLeaf) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
  }
  const std::size_t half = n / 2;
  return dot_range(a, b, half) + dot_range(a + half, b + half, n - half);
}

double fourth_range(const double* a, std::size_t n) {
  if (n <= kLeaf) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double sq = a[i] * a[i];
      s += sq * sq;
    }
    return s;
  }
  const std::size_t half = n / 2;
  return fourth_range(a, half) + fourth_range(a + half, n - half);
}

void require_same_spec(const GridField& a, const GridField& b) {
  if (!(a.spec() == b.spec()))
    throw std::invalid_argument("grid fields live on different grids");
}

struct Wrap {
  std::vector<int> prev, next;
  explicit Wrap(int m) : prev(m), next(m) {
    for (int i = 0; i < m; ++i) {
      prev[i] = (i + m - 1) % m;
      next[i] = (i + 1) % m;
    }
  }
};

}  // namespace

std::size_t GridSpec::node_count() const {
  std::size_t n = static_cast<std::size_t>(points) * points;
  if (dim == 3) n *= points;
  return n;
}

double GridSpec::cell_volume() const {
  const double h = spacing();
  double v = h * h;
  if (dim == 3) v *= h;
  return v;
}

double GridSpec::box_measure() const {
  double v = length * length;
  if (dim == 3) v *= length;
  return v;
}

void validate(const GridSpec& spec) {
  if (spec.dim != 2 && spec.dim != 3)
    throw std::invalid_argument("grid dim must be 2 or 3, got " +
                                std::to_string(spec.dim));
  if (spec.points < 4)
    throw std::invalid_argument("grid needs at least 4 points per axis, got " +
                                std::to_string(spec.points));
  if (!(spec.length > 0.0))
    throw std::invalid_argument("grid length must be positive");
}

GridField::GridField(const GridSpec& spec, double fill) : spec_(spec) {
  validate(spec);
  values_.assign(spec.node_count(), fill);
}

double& GridField::at(int i, int j) {
  return values_[static_cast<std::size_t>(i) * spec_.points + j];
}

double GridField::at(int i, int j) const {
  return values_[static_cast<std::size_t>(i) * spec_.points + j];
}

double& GridField::at(int i, int j, int k) {
  return values_[(static_cast<std::size_t>(i) * spec_.points + j) *
                     spec_.points +
                 k];
}

double GridField::at(int i, int j, int k) const {
  return values_[(static_cast<std::size_t>(i) * spec_.points + j) *
                     spec_.points +
                 k];
}

double pairwise_sum(std::span<const double> x) {
  return sum_range(x.data(), x.size());
}

GridField laplacian(const GridField& f) {
  const GridSpec& s = f.spec();
  const int m = s.points;
  const double h2 = s.spacing() * s.spacing();
  const Wrap w(m);
  GridField out(s);
  const double* v = f.data();
  double* o = out.data();
  if (s.dim == 2) {
    for (int i = 0; i < m; ++i) {
      const std::size_t rp = static_cast<std::size_t>(w.prev[i]) * m;
      const std::size_t rn = static_cast<std::size_t>(w.next[i]) * m;
      const std::size_t rc = static_cast<std::size_t>(i) * m;
      for (int j = 0; j < m; ++j) {
        const double c = v[rc + j];
        o[rc + j] = (v[rp + j] + v[rn + j] + v[rc + w.prev[j]] +
                     v[rc + w.next[j]] - 4.0 * c) /
                    h2;
      }
    }
  } else {
    const std::size_t mm = static_cast<std::size_t>(m) * m;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        const std::size_t pi = w.prev[i] * mm + static_cast<std::size_t>(j) * m;
        const std::size_t ni = w.next[i] * mm + static_cast<std::size_t>(j) * m;
        const std::size_t pj = i * mm + static_cast<std::size_t>(w.prev[j]) * m;
        const std::size_t nj = i * mm + static_cast<std::size_t>(w.next[j]) * m;
        const std::size_t rc = i * mm + static_cast<std::size_t>(j) * m;
        for (int k = 0; k < m; ++k) {
          const double c = v[rc + k];
          o[rc + k] = (v[pi + k] + v[ni + k] + v[pj + k] + v[nj + k] +
                       v[rc + w.prev[k]] + v[rc + w.next[k]] - 6.0 * c) /
                      h2;
        }
      }
    }
  }
  return out;
}

GridField one_plus_laplacian(const GridField& f) {
  GridField out = laplacian(f);
  double* o = out.data();
  const double* v = f.data();
  const std::size_t n = f.size();
  for (std::size_t i = 0; i < n; ++i) o[i] += v[i];
  return out;
}

GridField one_plus_laplacian_squared(const GridField& f) {
  return one_plus_laplacian(one_plus_laplacian(f));
}

std::vector<GridField> forward_differences(const GridField& f) {
  const GridSpec& s = f.spec();
  const int m = s.points;
  const double h = s.spacing();
  const Wrap w(m);
  const double* v = f.data();
  std::vector<GridField> out;
  out.reserve(s.dim);
  for (int axis = 0; axis < s.dim; ++axis) out.emplace_back(s);
  if (s.dim == 2) {
    double* ox = out[0].data();
    double* oy = out[1].data();
    for (int i = 0; i < m; ++i) {
      const std::size_t rc = static_cast<std::size_t>(i) * m;
      const std::size_t rn = static_cast<std::size_t>(w.next[i]) * m;
      for (int j = 0; j < m; ++j) {
        const double c = v[rc + j];
        ox[rc + j] = (v[rn + j] - c) / h;
        oy[rc + j] = (v[rc + w.next[j]] - c) / h;
      }
    }
  } else {
    double* ox = out[0].data();
    double* oy = out[1].data();
    double* oz = out[2].data();
    const std::size_t mm = static_cast<std::size_t>(m) * m;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        const std::size_t rc = i * mm + static_cast<std::size_t>(j) * m;
        const std::size_t ni = w.next[i] * mm + static_cast<std::size_t>(j) * m;
        const std::size_t nj = i * mm + static_cast<std::size_t>(w.next[j]) * m;
        for (int k = 0; k < m; ++k) {
          const double c = v[rc + k];
          ox[rc + k] = (v[ni + k] - c) / h;
          oy[rc + k] = (v[nj + k] - c) / h;
          oz[rc + k] = (v[rc + w.next[k]] - c) / h;
        }
      }
    }
  }
  return out;
}

double inner_product(const GridField& v, const GridField& w) {
  require_same_spec(v, w);
  return v.spec().cell_volume() * dot_range(v.data(), w.data(), v.size());
}

double field_norm(const GridField& v, Norm which) {
  switch (which) {
    case Norm::l2:
      return std::sqrt(inner_product(v, v));
    case Norm::l4:
      return std::pow(v.spec().cell_volume() * fourth_range(v.data(), v.size()),
                      0.25);
    case Norm::linf: {
      double m = 0.0;
      for (double x : v.values()) m = std::max(m, std::abs(x));
      return m;
    }
  }
  return 0.0;
}

GridField nonlinear_term(const GridField& u, const ModelParams& p) {
  GridField out(u.spec());
  const double* v = u.data();
  double* o = out.data();
  const std::size_t n = u.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double x = v[i];
    o[i] = x * x * x - p.g * x * x - p.eps * x;
  }
  return out;
}

}  // namespace sh
