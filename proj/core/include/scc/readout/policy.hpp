#pragma once

#include <cstddef>
#include <optional>

#include "scc/ctmc/charge.hpp"

namespace scc::readout {

/// Threshold charge classifier: NV- iff at least n_thresh photons arrive in
/// a window of t_R seconds.
struct ReadoutPolicy {
  double t_R = 0.0;
  std::size_t n_thresh = 1;
  /// Illumination power the policy was designed for, if known.
  std::optional<double> power_uW;

  /// Throws InvalidArgument unless t_R > 0 and n_thresh >= 1.
  void validate() const;
};

[[nodiscard]] constexpr ctmc::ChargeState classify(std::size_t photons,
                                                   const ReadoutPolicy &policy) noexcept {
  return photons >= policy.n_thresh ? ctmc::ChargeState::NVminus : ctmc::ChargeState::NVzero;
}

/// Charge-state prior used when scoring a policy.
enum class Prior { balanced, steady_state };

/// P(assign NV- | start in NV-) and P(assign NV- | start in NV0).
struct AssignmentProbs {
  double from_minus;
  double from_zero;
};

[[nodiscard]] AssignmentProbs assignment_probs(const ctmc::RateSet &rates,
                                               const ReadoutPolicy &policy,
                                               double pmf_tol = 1e-10);

/// P(assign NV- | initial) = 1 - sum_{n < n_thresh} p(n | initial).
[[nodiscard]] double assignment_prob(const ctmc::RateSet &rates, const ReadoutPolicy &policy,
                                     ctmc::ChargeState initial, double pmf_tol = 1e-10);

/// Prior-weighted probability of a correct assignment. The balanced prior
/// gives 1/2 P(NV- | NV-) + 1/2 P(NV0 | NV0).
[[nodiscard]] double charge_fidelity(const ctmc::RateSet &rates, const ReadoutPolicy &policy,
                                     Prior prior = Prior::balanced, double pmf_tol = 1e-10);

[[nodiscard]] double charge_fidelity(const AssignmentProbs &probs, double prior_minus = 0.5) noexcept;

/// Fidelity of the better of the threshold rule and its complement
/// (n < n_thresh -> NV-); never below 1/2 under the balanced prior.
[[nodiscard]] double best_rule_fidelity(const ctmc::RateSet &rates, const ReadoutPolicy &policy,
                                        double pmf_tol = 1e-10);

/// Probability of assigning NV- for a true NV- population beta.
[[nodiscard]] double effective_beta(double beta, const AssignmentProbs &probs);
[[nodiscard]] double effective_beta(double beta, const ctmc::RateSet &rates,
                                    const ReadoutPolicy &policy, double pmf_tol = 1e-10);

} // namespace scc::readout
