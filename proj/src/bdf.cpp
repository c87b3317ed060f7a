#include "sh/bdf.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace sh {

namespace {

void require_positive_tau(double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("time step must be positive");
}

void require_level(const TimeHistory& hist, long level, int needed) {
  if (level != hist.newest_level() + 1)
    throw std::invalid_argument(
        "level " + std::to_string(level) + " does not continue history at " +
        std::to_string(hist.newest_level()));
  if (hist.stored() < needed)
    throw std::invalid_argument("history holds " +
                                std::to_string(hist.stored()) +
                                " levels, need " + std::to_string(needed));
}

}  // namespace

BdfWeights BdfWeights::make(double tau) {
  require_positive_tau(tau);
  return {tau, 11.0 / (6.0 * tau), -7.0 / (6.0 * tau), 1.0 / (3.0 * tau)};
}

double BdfWeights::lead_weight(long level) const {
  if (level <= 0) throw std::invalid_argument("level must be >= 1");
  if (level == 1) return 2.0 / tau;
  if (level == 2) return 1.5 / tau;
  return b0;
}

TimeHistory::TimeHistory(const GridSpec& spec, double tau)
    : spec_(spec), tau_(tau) {
  validate(spec);
  require_positive_tau(tau);
}

TimeHistory::TimeHistory(const GridSpec& spec, double tau, long newest_level,
                         std::vector<GridField> newest_first)
    : spec_(spec), tau_(tau) {
  validate(spec);
  require_positive_tau(tau);
  if (newest_level < 0)
    throw std::invalid_argument("restored level must be >= 0");
  const std::size_t n = newest_first.size();
  if (n < 1 || n > 3)
    throw std::invalid_argument("restored window must hold 1 to 3 fields");
  if (static_cast<long>(n) > newest_level + 1)
    throw std::invalid_argument("restored window is deeper than the level");
  for (const GridField& f : newest_first)
    if (!(f.spec() == spec_))
      throw std::invalid_argument("restored field lives on a different grid");
  newest_level_ = newest_level;
  levels_ = std::move(newest_first);
}

void TimeHistory::push(GridField u) {
  if (!(u.spec() == spec_))
    throw std::invalid_argument("pushed field lives on a different grid");
  levels_.insert(levels_.begin(), std::move(u));
  if (levels_.size() > 3) levels_.pop_back();
  ++newest_level_;
}

const GridField& TimeHistory::from_newest(int back) const {
  return levels_.at(back);
}

GridField d3_apply(const TimeHistory& hist, const GridField& candidate,
                   long level) {
  if (level < 1) throw std::invalid_argument("level must be >= 1");
  require_level(hist, level, level >= 3 ? 3 : static_cast<int>(level));
  const double tau = hist.tau();
  GridField out(hist.spec());
  const std::size_t n = out.size();
  const double* w = candidate.data();
  const double* h0 = hist.from_newest(0).data();
  double* o = out.data();
  if (level == 1) {
    for (std::size_t i = 0; i < n; ++i) o[i] = 2.0 * (w[i] - h0[i]) / tau;
    return out;
  }
  const double* h1 = hist.from_newest(1).data();
  if (level == 2) {
    for (std::size_t i = 0; i < n; ++i)
      o[i] = (3.0 * (w[i] - h0[i]) - (h0[i] - h1[i])) / (2.0 * tau);
    return out;
  }
  const double* h2 = hist.from_newest(2).data();
  for (std::size_t i = 0; i < n; ++i)
    o[i] = (11.0 * (w[i] - h0[i]) - 7.0 * (h0[i] - h1[i]) +
            2.0 * (h1[i] - h2[i])) /
           (6.0 * tau);
  return out;
}

GridField lagged_rhs(const TimeHistory& hist, long level, const GridField* phi0,
                     const GridField* phi1) {
  if (level < 1) throw std::invalid_argument("level must be >= 1");
  const double tau = hist.tau();
  GridField out(hist.spec());
  const std::size_t n = out.size();
  double* o = out.data();
  if (level == 1) {
    if (phi0 == nullptr || phi1 == nullptr)
      throw std::invalid_argument("level 1 needs the startup fields");
    require_level(hist, level, 1);
    const double* p0 = phi0->data();
    const double* p1 = phi1->data();
    for (std::size_t i = 0; i < n; ++i) o[i] = 2.0 * p0[i] / tau + p1[i];
    return out;
  }
  if (level == 2) {
    require_level(hist, level, 2);
    const double* h0 = hist.from_newest(0).data();
    const double* h1 = hist.from_newest(1).data();
    for (std::size_t i = 0; i < n; ++i)
      o[i] = (3.0 * h0[i] + (h0[i] - h1[i])) / (2.0 * tau);
    return out;
  }
  require_level(hist, level, 3);
  const BdfWeights b = BdfWeights::make(tau);
  const double* h0 = hist.from_newest(0).data();
  const double* h1 = hist.from_newest(1).data();
  const double* h2 = hist.from_newest(2).data();
  for (std::size_t i = 0; i < n; ++i)
    o[i] = b.b0 * h0[i] - b.b1 * (h0[i] - h1[i]) - b.b2 * (h1[i] - h2[i]);
  return out;
}

StartupFields initial_level(const GridField& phi0, double tau,
                            const ModelParams& p, StartupSign sign,
                            const GridField* forcing_at_t0) {
  require_positive_tau(tau);
  GridField phi1 = one_plus_laplacian_squared(phi0);
  const GridField fterm = nonlinear_term(phi0, p);
  const std::size_t n = phi0.size();
  double* d = phi1.data();
  const double* f = fterm.data();
  if (sign == StartupSign::corrected) {
    const double* forc = forcing_at_t0 ? forcing_at_t0->data() : nullptr;
    for (std::size_t i = 0; i < n; ++i) {
      d[i] = -(d[i] + f[i]);
      if (forc) d[i] += forc[i];
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) d[i] += f[i];
  }
  GridField u0(phi0.spec());
  const double* p0 = phi0.data();
  double* u = u0.data();
  for (std::size_t i = 0; i < n; ++i) u[i] = p0[i] + 0.5 * tau * d[i];
  return {phi0, std::move(phi1), std::move(u0)};
}

}  // namespace sh
