#include "scc/readout/optimize_readout.hpp"

#include <algorithm>
#include <cmath>

#include "scc/errors.hpp"
#include "scc/optimize.hpp"

namespace scc::readout {
namespace {

constexpr double kTie = 1e-6;

double fidelity_or_zero(const RateLaws &laws, double power, std::size_t n, double t,
                        const ReadoutSearch &s) {
  try {
    return charge_fidelity(laws.at(power), ReadoutPolicy{t, n, power}, s.prior, s.pmf_tol);
  } catch (const QuadratureFailure &) {
    return 0.0;
  }
}

void check_search(const ReadoutSearch &s) {
  if (!(s.t_min > 0.0) || !(s.t_max > s.t_min)) {
    throw InvalidArgument("readout search needs 0 < t_min < t_max");
  }
}

} // namespace

ctmc::RateSet RateLaws::at(double p) const noexcept {
  return {g0(p), g1(p), gamma0(p), gamma1(p)};
}

RateLaws RateLaws::published() {
  using K = est::SaturationModel::Kind;
  return {{K::quadratic_sat, 39.0, 134.0, 0.0},
          {K::quadratic_sat, 310.0, 53.2, 0.0},
          {K::linear_sat, 1650.0, 134.0, 268.0},
          {K::linear_sat, 46200.0, 53.0, 268.0}};
}

ReadoutOptimum optimize_policy(const RateLaws &laws, double power_uW, std::size_t n_thresh,
                               const ReadoutSearch &search) {
  check_search(search);
  if (n_thresh < 1) throw InvalidArgument("n_thresh must be >= 1");
  const auto negative = [&](double log_t) {
    return -fidelity_or_zero(laws, power_uW, n_thresh, std::exp(log_t), search);
  };
  const double lo = std::log(search.t_min), hi = std::log(search.t_max);
  const auto r = opt::scan_then_brent(negative, lo, hi, search.scan_points, 1e-9);
  ReadoutOptimum out{power_uW, n_thresh, std::exp(r.x), -r.value, false};
  const double margin = 1e-6 * (hi - lo);
  out.boundary = r.x <= lo + margin || r.x >= hi - margin;
  return out;
}

std::vector<ReadoutOptimum> pareto_front(std::vector<ReadoutOptimum> rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const ReadoutOptimum &a, const ReadoutOptimum &b) {
    if (a.t_R != b.t_R) return a.t_R < b.t_R;
    return a.n_thresh < b.n_thresh;
  });
  std::vector<ReadoutOptimum> front;
  for (const auto &r : rows) {
    if (!(r.fidelity > 0.0)) continue;
    if (front.empty() || r.fidelity > front.back().fidelity + kTie) front.push_back(r);
  }
  return front;
}

ReadoutTable optimize_readout(const RateLaws &laws, const std::vector<double> &powers_uW,
                              const std::vector<std::size_t> &thresholds,
                              const ReadoutSearch &search) {
  if (powers_uW.empty() || thresholds.empty()) {
    throw InvalidArgument("readout optimization needs non-empty power and threshold grids");
  }
  ReadoutTable table;
  for (const double p : powers_uW) {
    if (!(p > 0.0)) throw InvalidArgument("readout optimization: powers must be > 0");
    for (const auto n : thresholds) {
      const auto row = optimize_policy(laws, p, n, search);
      if (row.fidelity > 0.0) table.rows.push_back(row);
    }
  }
  // Same power, equal fidelity within the tie margin: only the smaller threshold
  // may enter the front.
  std::vector<ReadoutOptimum> candidates;
  for (const auto &r : table.rows) {
    const bool shadowed = std::any_of(table.rows.begin(), table.rows.end(), [&](const auto &o) {
      return o.power_uW == r.power_uW && o.n_thresh < r.n_thresh &&
             std::fabs(o.fidelity - r.fidelity) <= kTie;
    });
    if (!shadowed) candidates.push_back(r);
  }
  table.pareto = pareto_front(std::move(candidates));
  return table;
}

ReadoutOptimum best_at_duration(const RateLaws &laws, double t_R, double p_min_uW,
                                double p_max_uW, const std::vector<std::size_t> &thresholds,
                                const ReadoutSearch &search) {
  if (!(t_R > 0.0)) throw InvalidArgument("readout duration must be > 0");
  if (!(p_min_uW > 0.0) || !(p_max_uW > p_min_uW)) {
    throw InvalidArgument("power range needs 0 < p_min < p_max");
  }
  if (thresholds.empty()) throw InvalidArgument("threshold set is empty");
  ReadoutOptimum best{p_min_uW, thresholds.front(), t_R, -1.0, false};
  const double lo = std::log(p_min_uW), hi = std::log(p_max_uW);
  for (const auto n : thresholds) {
    const auto negative = [&](double log_p) {
      return -fidelity_or_zero(laws, std::exp(log_p), n, t_R, search);
    };
    const auto r = opt::scan_then_brent(negative, lo, hi, search.scan_points, 1e-9);
    const double f = -r.value;
    const bool better = f > best.fidelity + kTie ||
                        (std::fabs(f - best.fidelity) <= kTie && n < best.n_thresh);
    if (better) {
      const double margin = 1e-6 * (hi - lo);
      best = {std::exp(r.x), n, t_R, f, r.x <= lo + margin || r.x >= hi - margin};
    }
  }
  return best;
}

ReadoutOptimum best_within_duration(const RateLaws &laws, double t_R_max, double p_min_uW,
                                    double p_max_uW, const std::vector<std::size_t> &thresholds,
                                    const ReadoutSearch &search) {
  check_search(search);
  if (!(t_R_max > search.t_min)) {
    return best_at_duration(laws, t_R_max, p_min_uW, p_max_uW, thresholds, search);
  }
  if (!(p_min_uW > 0.0) || !(p_max_uW > p_min_uW)) {
    throw InvalidArgument("power range needs 0 < p_min < p_max");
  }
  if (thresholds.empty()) throw InvalidArgument("threshold set is empty");
  ReadoutSearch inner = search;
  inner.t_max = t_R_max;
  ReadoutOptimum best{p_min_uW, thresholds.front(), t_R_max, -1.0, false};
  const double lo = std::log(p_min_uW), hi = std::log(p_max_uW);
  for (const auto n : thresholds) {
    const auto negative = [&](double log_p) {
      return -optimize_policy(laws, std::exp(log_p), n, inner).fidelity;
    };
    const auto r = opt::scan_then_brent(negative, lo, hi, search.scan_points, 1e-6);
    const auto at = optimize_policy(laws, std::exp(r.x), n, inner);
    const bool better = at.fidelity > best.fidelity + kTie ||
                        (std::fabs(at.fidelity - best.fidelity) <= kTie && n < best.n_thresh);
    if (better) best = at;
  }
  return best;
}

std::vector<EnvelopePoint> fidelity_envelope(const RateLaws &laws, const std::vector<double> &t_grid,
                                             double p_min_uW, double p_max_uW,
                                             const std::vector<std::size_t> &thresholds,
                                             const ReadoutSearch &search) {
  std::vector<double> ts = t_grid;
  std::sort(ts.begin(), ts.end());
  std::vector<EnvelopePoint> out;
  ReadoutOptimum running{p_min_uW, thresholds.empty() ? 1 : thresholds.front(), 0.0, -1.0, false};
  for (const double t : ts) {
    const auto at = best_at_duration(laws, t, p_min_uW, p_max_uW, thresholds, search);
    const auto within = best_within_duration(laws, t, p_min_uW, p_max_uW, thresholds, search);
    // The feasible sets are nested, so the envelope may not drop between grid points.
    for (const auto &cand : {at, within}) {
      if (cand.fidelity > running.fidelity) running = cand;
    }
    out.push_back({t, at.fidelity, running.fidelity, at.power_uW, at.n_thresh, running.t_R,
                   running.power_uW, running.n_thresh});
  }
  return out;
}

} // namespace scc::readout
