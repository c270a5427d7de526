#pragma once

#include <cstddef>
#include <vector>

#include "scc/ctmc/charge.hpp"
#include "scc/estimators/saturation.hpp"
#include "scc/readout/policy.hpp"

namespace scc::readout {

/// Power dependence of the four charge-dynamics rates.
struct RateLaws {
  est::SaturationModel g0;
  est::SaturationModel g1;
  est::SaturationModel gamma0;
  est::SaturationModel gamma1;

  [[nodiscard]] ctmc::RateSet at(double power_uW) const noexcept;

  /// Published coefficients for 594 nm illumination (P in uW, rates in cps):
  ///   g0     = 39 P^2 / (1 + P/134)
  ///   g1     = 310 P^2 / (1 + P/53.2)
  ///   gamma0 = 1650 P / (1 + P/134) + 268
  ///   gamma1 = 46200 P / (1 + P/53) + 268
  static RateLaws published();
};

struct ReadoutSearch {
  double t_min = 1e-7; ///< s
  double t_max = 1e-1; ///< s
  std::size_t scan_points = 40;
  double pmf_tol = 1e-10;
  Prior prior = Prior::balanced;
};

struct ReadoutOptimum {
  double power_uW = 0.0;
  std::size_t n_thresh = 1;
  double t_R = 0.0;
  double fidelity = 0.0;
  bool boundary = false; ///< optimum sits on a t_R bound

  friend bool operator==(const ReadoutOptimum &, const ReadoutOptimum &) = default;
};

struct ReadoutTable {
  /// One row per (power, threshold), powers outermost, in input order.
  std::vector<ReadoutOptimum> rows;
  /// Rows not dominated by any row with a shorter-or-equal readout time,
  /// ascending in t_R and strictly ascending in fidelity.
  std::vector<ReadoutOptimum> pareto;
};

/// Maximizes fidelity over t_R on [t_min, t_max] (log-scale scan, then Brent)
/// for each (power, threshold).
[[nodiscard]] ReadoutOptimum optimize_policy(const RateLaws &laws, double power_uW,
                                             std::size_t n_thresh, const ReadoutSearch &search = {});

[[nodiscard]] ReadoutTable optimize_readout(const RateLaws &laws, const std::vector<double> &powers_uW,
                                            const std::vector<std::size_t> &thresholds,
                                            const ReadoutSearch &search = {});

/// Non-dominated subset of `rows` (see ReadoutTable::pareto). Ties in
/// fidelity within 1e-6 keep the smaller threshold.
[[nodiscard]] std::vector<ReadoutOptimum> pareto_front(std::vector<ReadoutOptimum> rows);

/// Best fidelity for a readout of exactly t_R, maximized over power in
/// [p_min, p_max] and over the given thresholds.
[[nodiscard]] ReadoutOptimum best_at_duration(const RateLaws &laws, double t_R, double p_min_uW,
                                              double p_max_uW, const std::vector<std::size_t> &thresholds,
                                              const ReadoutSearch &search = {});

/// Best fidelity for any readout time in [search.t_min, t_R_max], maximized
/// over power in [p_min, p_max] and over the thresholds.
[[nodiscard]] ReadoutOptimum best_within_duration(const RateLaws &laws, double t_R_max,
                                                  double p_min_uW, double p_max_uW,
                                                  const std::vector<std::size_t> &thresholds,
                                                  const ReadoutSearch &search = {});

/// Fidelity envelope on an ascending grid: for each t, the best fidelity at
/// exactly t and the best with readout no longer than t.
struct EnvelopePoint {
  double t_R;
  double fidelity_at;  ///< best at exactly t_R
  double fidelity_env; ///< best at any duration <= t_R
  double power_uW;     ///< optimum at exactly t_R
  std::size_t n_thresh;
  double env_t_R;      ///< readout time achieving fidelity_env
  double env_power_uW;
  std::size_t env_n_thresh;
};
[[nodiscard]] std::vector<EnvelopePoint> fidelity_envelope(const RateLaws &laws,
                                                           const std::vector<double> &t_grid,
                                                           double p_min_uW, double p_max_uW,
                                                           const std::vector<std::size_t> &thresholds,
                                                           const ReadoutSearch &search = {});

} // namespace scc::readout
