#pragma once

#include <string_view>
#include <vector>

#include "scc/estimators/fit_result.hpp"

namespace scc::est {

/// Readout noise versus readout time, f(t_R) = 1 + a t_R^-b, with t_R
/// expressed in microseconds inside the power law.
struct NoiseCurve {
  static constexpr std::string_view kTimeUnit = "us";

  double a = 0.0;
  double b = 0.0;

  /// Noise at a readout time given in seconds.
  [[nodiscard]] double operator()(double t_R_seconds) const noexcept;
};

struct NoisePoint {
  double t_R;     ///< s
  double sigma_R; ///< > 1
};

/// Least squares on relative residuals (f - sigma)/sigma, started from the
/// log-linear fit of log(sigma - 1). Parameters a and b; the unit of t_R in
/// the power law is reported under units["a"]. Errors are linearized and
/// scaled by the residual variance. Throws InvalidArgument if any
/// sigma_R <= 1 or t_R <= 0.
[[nodiscard]] FitResult fit_noise_curve(const std::vector<NoisePoint> &points);

[[nodiscard]] NoiseCurve noise_curve_from(const FitResult &fit);

} // namespace scc::est
