#pragma once

#include <cstddef>

#include "scc/ctmc/charge.hpp"
#include "scc/estimators/fit_result.hpp"
#include "scc/estimators/histogram.hpp"

namespace scc::est {

/// How the charge state at the start of each window is distributed.
struct InitialMixture {
  bool steady_state = true;
  double p_minus = 1.0; ///< used only when steady_state is false

  static InitialMixture stationary() { return {true, 0.0}; }
  static InitialMixture fixed(double p_minus) { return {false, p_minus}; }

  [[nodiscard]] double weight(const ctmc::RateSet &rates) const;
};

struct RateFitOptions {
  double pmf_tol = 1e-8;
  /// Tighter tolerance for the likelihood evaluations behind the Hessian.
  double hessian_pmf_tol = 1e-10;
  std::size_t max_evals = 6000;
  std::size_t n_starts = 8;
  /// Flag "weakly_identified" when g1 * t_R falls below this.
  double weak_identification = 0.2;
};

/// Multinomial log-likelihood sum_n counts[n] log p(n) under the mixture pmf.
[[nodiscard]] double log_likelihood(const CountHistogram &hist, const ctmc::RateSet &rates,
                                    const InitialMixture &mixture, double pmf_tol = 1e-8);

/// Maximum-likelihood estimate of (g0, g1, gamma0, gamma1) from one histogram.
///
/// Simplex search in log-rates from 8 starts (see the implementation for the
/// grid), best start polished, standard errors from the observed information.
/// Parameters are in 1/s. Runs out of budget -> converged = false.
/// Throws NonIdentifiable when the counts are consistent with one Poisson
/// law, and InvalidArgument for fewer than two occupied bins.
[[nodiscard]] FitResult fit_rates_mle(const CountHistogram &hist,
                                      const InitialMixture &mixture,
                                      const RateFitOptions &opts = {});

[[nodiscard]] ctmc::RateSet rates_from(const FitResult &fit);

/// d/dp of the log-likelihood in the initial NV- weight p (analytic).
[[nodiscard]] double charge_mixture_score(const CountHistogram &hist, const ctmc::RateSet &rates,
                                          double p_minus, double pmf_tol = 1e-9);

/// One-parameter MLE of the initial NV- weight for known rates. Flags
/// "boundary" when the maximum sits at 0 or 1.
[[nodiscard]] FitResult fit_charge_mixture(const CountHistogram &hist,
                                           const ctmc::RateSet &rates,
                                           double pmf_tol = 1e-9);

} // namespace scc::est
