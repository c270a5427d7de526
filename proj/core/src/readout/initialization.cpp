#include "scc/readout/initialization.hpp"

#include <cmath>
#include <string>

#include "scc/errors.hpp"
#include "scc/readout/policy.hpp"

namespace scc::readout {
namespace {

void check_probability(double p, const char *name) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument(std::string(name) + " must lie in [0, 1]");
}

} // namespace

InitializationModel initialization_model(double p_click, double fidelity_unconditioned,
                                         double fidelity_conditioned, const AttemptTiming &timing) {
  check_probability(p_click, "click probability");
  check_probability(fidelity_unconditioned, "unconditioned fidelity");
  check_probability(fidelity_conditioned, "conditioned fidelity");
  if (!(timing.pump >= 0.0) || !(timing.probe >= 0.0) || !(timing.overhead >= 0.0)) {
    throw InvalidArgument("attempt durations must be >= 0");
  }
  if (p_click == 0.0) throw InvalidArgument("initialization never succeeds (click probability 0)");
  return {p_click, 1.0 / p_click, timing.total() / p_click, fidelity_unconditioned,
          fidelity_conditioned};
}

double fitted_overhead(double p_success, double t_I, const AttemptTiming &timing) {
  check_probability(p_success, "success probability");
  if (p_success == 0.0) throw InvalidArgument("success probability must be > 0");
  if (!(t_I > 0.0)) throw InvalidArgument("t_I must be > 0");
  return t_I * p_success - timing.pump - timing.probe;
}

double click_probability(const ctmc::RateSet &rates, double t_probe, double p_minus) {
  check_probability(p_minus, "NV- weight");
  const auto probs = assignment_probs(rates, ReadoutPolicy{t_probe, 1, {}});
  return p_minus * probs.from_minus + (1.0 - p_minus) * probs.from_zero;
}

} // namespace scc::readout
