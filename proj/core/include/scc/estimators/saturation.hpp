#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "scc/estimators/fit_result.hpp"

namespace scc::est {

/// Rate-versus-power law. Powers in uW, rates in counts/s.
///   linear_sat:    a P / (1 + P/P_sat) + dc
///   quadratic_sat: a P^2 / (1 + P/P_sat)
struct SaturationModel {
  enum class Kind { linear_sat, quadratic_sat };

  Kind kind = Kind::linear_sat;
  double a = 0.0;
  double P_sat = 1.0;
  double dc = 0.0;

  [[nodiscard]] double operator()(double power_uW) const noexcept;
  /// Throws InvalidArgument unless a >= 0, P_sat > 0 and dc >= 0.
  void validate() const;

  friend bool operator==(const SaturationModel &, const SaturationModel &) = default;
};

[[nodiscard]] std::string_view to_string(SaturationModel::Kind kind) noexcept;
[[nodiscard]] SaturationModel::Kind parse_saturation_kind(std::string_view text);

struct SaturationPoint {
  double power_uW;
  double rate;
  double error; ///< one-sigma uncertainty of `rate`, > 0
};

struct SaturationFitOptions {
  /// Hold the dark-count term at this value (linear_sat only).
  std::optional<double> fixed_dc;
  /// Hold the saturation power, e.g. at the value from a companion linear fit.
  std::optional<double> fixed_P_sat;
};

/// Weighted least squares. For fixed P_sat the model is linear in (a, dc),
/// so those are solved exactly (non-negative) and P_sat is found by a 1-D
/// search on log P_sat, then all free parameters are refined jointly.
/// Parameters: a, P_sat, dc (linear_sat only). Errors are the linearized
/// covariance with the stated point errors taken as known.
/// Throws RankDeficient when the distinct powers cannot determine the free
/// parameters.
[[nodiscard]] FitResult fit_saturation(const std::vector<SaturationPoint> &points,
                                       SaturationModel::Kind kind,
                                       const SaturationFitOptions &opts = {});

[[nodiscard]] SaturationModel saturation_from(const FitResult &fit);

} // namespace scc::est
