#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "scc/ctmc/charge.hpp"

namespace scc::ctmc {

/// Distribution of the detected photon number in a counting window of length
/// t_R, for a known initial charge state or a mixture of the two.
struct PhotonCountDistribution {
  double t_R = 0.0;
  /// Weight of NV- in the initial state; 1 for NV-, 0 for NV0.
  double p_minus = 1.0;
  /// pmf[n] for n = 0..n_max; entries above n_max are zero by definition.
  std::vector<double> pmf;
  /// Declared bound on 1 - sum(pmf) (truncation plus quadrature error).
  double norm_tolerance = 0.0;

  [[nodiscard]] std::size_t n_max() const noexcept { return pmf.empty() ? 0 : pmf.size() - 1; }
  [[nodiscard]] double operator[](std::size_t n) const noexcept {
    return n < pmf.size() ? pmf[n] : 0.0;
  }
  [[nodiscard]] double total() const noexcept;
  [[nodiscard]] double mean() const noexcept;
};

struct PmfOptions {
  /// Accuracy of each pmf value (absolute, and relative for values above 1e-3).
  double tol = 1e-8;
  /// Truncation bound; default_n_max() when unset.
  std::optional<std::size_t> n_max;
  std::size_t max_subdivisions = 4000;
};

/// ceil(m + 10 sqrt(m)) + 10 with m = max(gamma0, gamma1) * t_R.
[[nodiscard]] std::size_t default_n_max(const RateSet &rates, double t_R);

/// Photon-number pmf for a fixed initial charge state.
///
/// The window is split by the total time tau spent in NV-. Summing over all
/// ionization/recapture sequences with that residence time gives closed-form
/// jump densities in terms of I0 (odd number of jumps) and I1 (even, >= 2),
/// and the count is Poisson with mean gamma1*tau + gamma0*(t_R - tau). The
/// tau-integral is done by adaptive quadrature after tau = t_R sin^2(theta),
/// which removes the 1/sqrt endpoint singularity of the even term; the
/// no-jump term e^{-g1 t_R} Poisson(gamma1 t_R) is added exactly. Starting in
/// NV0 is the same computation with indices 1 and 0 exchanged.
///
/// Throws QuadratureFailure if the tolerance is not met within the
/// subdivision budget.
[[nodiscard]] PhotonCountDistribution pmf_analytic(const RateSet &rates, double t_R,
                                                   ChargeState initial,
                                                   const PmfOptions &opts = {});

/// p_minus * p(n | NV-) + (1 - p_minus) * p(n | NV0).
[[nodiscard]] PhotonCountDistribution pmf_mixture(const RateSet &rates, double t_R,
                                                  double p_minus,
                                                  const PmfOptions &opts = {});

/// Both conditional pmfs from a single quadrature pass (they share the
/// Poisson factor at every node).
struct ConditionalPmfs {
  std::vector<double> from_minus;
  std::vector<double> from_zero;
  std::size_t panels = 0;
  std::size_t evaluations = 0;
};

[[nodiscard]] ConditionalPmfs conditional_pmfs(const RateSet &rates, double t_R,
                                               std::size_t n_max, double tol = 1e-8,
                                               std::size_t max_subdivisions = 4000);

/// Jump-sequence densities (per unit tau) for a window that starts in NV- and
/// spends total time tau in NV-, without the Poisson factor:
///   odd  = g1 e^{(g0-g1)tau - g0 t_R} I0(x)
///   even = sqrt(g1 g0 tau / (t_R - tau)) e^{(g0-g1)tau - g0 t_R} I1(x)
/// with x = 2 sqrt(g1 g0 tau (t_R - tau)). Evaluated in log space.
struct JumpDensity {
  double odd;
  double even;
};

[[nodiscard]] JumpDensity jump_density(const RateSet &rates, double t_R, double tau);

} // namespace scc::ctmc
