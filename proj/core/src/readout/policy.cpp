#include "scc/readout/policy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "scc/ctmc/photon_statistics.hpp"
#include "scc/errors.hpp"

namespace scc::readout {

void ReadoutPolicy::validate() const {
  if (!(t_R > 0.0) || !std::isfinite(t_R)) throw InvalidArgument("readout policy: t_R must be > 0");
  if (n_thresh < 1) throw InvalidArgument("readout policy: n_thresh must be >= 1");
  if (power_uW && !(*power_uW >= 0.0)) throw InvalidArgument("readout policy: power must be >= 0");
}

AssignmentProbs assignment_probs(const ctmc::RateSet &rates, const ReadoutPolicy &policy,
                                 double pmf_tol) {
  policy.validate();
  rates.validate();
  // Only the bins below the threshold are needed.
  const auto c = ctmc::conditional_pmfs(rates, policy.t_R, policy.n_thresh - 1, pmf_tol);
  const double below_minus = std::accumulate(c.from_minus.begin(), c.from_minus.end(), 0.0);
  const double below_zero = std::accumulate(c.from_zero.begin(), c.from_zero.end(), 0.0);
  return {std::clamp(1.0 - below_minus, 0.0, 1.0), std::clamp(1.0 - below_zero, 0.0, 1.0)};
}

double assignment_prob(const ctmc::RateSet &rates, const ReadoutPolicy &policy,
                       ctmc::ChargeState initial, double pmf_tol) {
  const auto p = assignment_probs(rates, policy, pmf_tol);
  return initial == ctmc::ChargeState::NVminus ? p.from_minus : p.from_zero;
}

double charge_fidelity(const AssignmentProbs &probs, double prior_minus) noexcept {
  return prior_minus * probs.from_minus + (1.0 - prior_minus) * (1.0 - probs.from_zero);
}

double charge_fidelity(const ctmc::RateSet &rates, const ReadoutPolicy &policy, Prior prior,
                       double pmf_tol) {
  const double w = prior == Prior::balanced ? 0.5 : ctmc::steady_state(rates).p_minus;
  return charge_fidelity(assignment_probs(rates, policy, pmf_tol), w);
}

double best_rule_fidelity(const ctmc::RateSet &rates, const ReadoutPolicy &policy,
                          double pmf_tol) {
  const double f = charge_fidelity(rates, policy, Prior::balanced, pmf_tol);
  return std::max(f, 1.0 - f);
}

double effective_beta(double beta, const AssignmentProbs &probs) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw InvalidArgument("beta must lie in [0, 1]");
  return beta * probs.from_minus + (1.0 - beta) * probs.from_zero;
}

double effective_beta(double beta, const ctmc::RateSet &rates, const ReadoutPolicy &policy,
                      double pmf_tol) {
  return effective_beta(beta, assignment_probs(rates, policy, pmf_tol));
}

} // namespace scc::readout
