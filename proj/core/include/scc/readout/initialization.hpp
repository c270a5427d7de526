#pragma once

#include "scc/ctmc/charge.hpp"

namespace scc::readout {

/// Durations of one pump-probe initialization attempt, in seconds.
struct AttemptTiming {
  double pump = 150e-9;
  double probe = 900e-9;
  double overhead = 0.0; ///< per-attempt dead time

  [[nodiscard]] double total() const noexcept { return pump + probe + overhead; }
};

/// Repeat-until-success charge initialization: an attempt succeeds when the
/// probe window registers at least one photon.
struct InitializationModel {
  double p_success = 0.0;
  double expected_attempts = 0.0; ///< 1 / p_success (geometric distribution)
  double t_I = 0.0;               ///< attempt duration / p_success, s
  double fidelity_unconditioned = 0.0;
  double fidelity_conditioned = 0.0;
};

/// Throws InvalidArgument for probabilities outside [0, 1] and a zero-success
/// error (InvalidArgument) when p_click = 0.
[[nodiscard]] InitializationModel initialization_model(double p_click,
                                                       double fidelity_unconditioned,
                                                       double fidelity_conditioned,
                                                       const AttemptTiming &timing = {});

/// Per-attempt overhead that makes the mean initialization time equal t_I.
/// Negative when pump + probe alone already exceed t_I * p_success.
[[nodiscard]] double fitted_overhead(double p_success, double t_I, const AttemptTiming &timing = {});

/// Probability of at least one detected photon in a probe of t_probe seconds
/// starting with NV- weight p_minus.
[[nodiscard]] double click_probability(const ctmc::RateSet &rates, double t_probe, double p_minus);

} // namespace scc::readout
