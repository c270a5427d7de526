#pragma once

#include <vector>

#include "scc/estimators/fit_result.hpp"

namespace scc::est {

struct EchoPoint {
  double tau;    ///< s
  double signal; ///< normalized fluorescence
};

/// Revival-train coherence model
///   F(tau) = A + B exp(-(tau/T2)^n) sum_{j=0..9} exp(-((tau - j T_rev)/T_dec)^2)
/// with all times in seconds.
struct EchoModel {
  double A = 0.0;
  double B = 0.0;
  double n = 1.0;
  double T2 = 1.0;
  double T_rev = 1.0;
  double T_dec = 1.0;

  [[nodiscard]] double operator()(double tau) const noexcept;
};

struct EchoFitOptions {
  /// Number of revival-period candidates in the multi-start scan.
  std::size_t revival_starts = 24;
  std::size_t max_iterations = 400;
};

/// Nonlinear least squares of EchoModel, multi-started over T_rev.
/// When the envelope amplitude is indistinguishable from zero the result
/// holds only A (the data mean) and B = 0, flagged "envelope_unidentifiable".
/// Errors are linearized, scaled by the residual variance.
[[nodiscard]] FitResult fit_spin_echo(const std::vector<EchoPoint> &points,
                                      const EchoFitOptions &opts = {});

[[nodiscard]] EchoModel echo_model_from(const FitResult &fit);

} // namespace scc::est
