#include "sh/energy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sh {

namespace {

GridField squared(const GridField& u) {
  GridField out(u.spec());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] * u[i];
  return out;
}

double diff_norm_sq(const GridField& a, const GridField& b) {
  GridField d(a.spec());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return inner_product(d, d);
}

}  // namespace

double discrete_energy(const GridField& u, const ModelParams& p) {
  const GridField op = one_plus_laplacian(u);
  const GridField u2 = squared(u);
  return 0.5 * inner_product(op, op) + 0.25 * inner_product(u2, u2) -
         p.g / 3.0 * inner_product(u2, u) -
         0.5 * p.eps * inner_product(u, u);
}

double modified_energy(const TimeHistory& hist, long level,
                       const ModelParams& p) {
  if (level != hist.newest_level())
    throw std::invalid_argument("history is at level " +
                                std::to_string(hist.newest_level()) +
                                ", asked for " + std::to_string(level));
  const double tau = hist.tau();
  double e = discrete_energy(hist.from_newest(0), p);
  if (level >= 1)
    e += 0.75 / tau * diff_norm_sq(hist.from_newest(0), hist.from_newest(1));
  if (level >= 2)
    e += 1.0 / (6.0 * tau) *
         diff_norm_sq(hist.from_newest(1), hist.from_newest(2));
  return e;
}

LinfBound linf_bound_check(const GridField& u, double initial_energy,
                           const ModelParams& p) {
  LinfBound out;
  const double a =
      field_norm(one_plus_laplacian(u), Norm::l2) + field_norm(u, Norm::l2);
  out.lhs = a * a;
  const double c = 1.0 + p.eps + p.g * p.g;
  out.rhs = 4.0 * initial_energy + 9.0 / 7.0 * c * c * u.spec().box_measure();
  out.holds = out.lhs <= out.rhs + 1e-9 * (1.0 + std::abs(out.rhs));
  return out;
}

}  // namespace sh
