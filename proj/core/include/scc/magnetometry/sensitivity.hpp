#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scc/estimators/noise_curve.hpp"
#include "scc/readout/noise.hpp"

namespace scc::mag {

struct PhysicalConstants {
  double hbar = 1.054571817e-34;   ///< J s
  double mu_B = 9.2740100783e-24;  ///< J/T
  double g_factor = 2.003;

  /// pi hbar / (2 g mu_B), in T s.
  [[nodiscard]] double field_prefactor() const noexcept;
  /// Echo phase per unit field and echo time, g mu_B / (pi hbar), in 1/(T s).
  [[nodiscard]] double phase_rate() const noexcept;
};

/// Echo signal S = p0 b0 + (1 - p0) b1 with p0 = cos^2(g mu_B B tau / (pi hbar)).
[[nodiscard]] double echo_signal(double field_T, double tau, const readout::SCCPopulations &pops,
                                 const PhysicalConstants &c = {});

/// dS/dB, in 1/T.
[[nodiscard]] double echo_slope(double field_T, double tau, const readout::SCCPopulations &pops,
                                const PhysicalConstants &c = {});

/// Smallest resolvable field change per shot at the balanced operating point,
/// (pi hbar / (g mu_B tau)) sigma_S / |b0 - b1| with
/// sigma_S^2 = (b0 + b1)(2 - b0 - b1) / 4. Throws NoContrast when b0 == b1.
[[nodiscard]] double min_detectable_field(const readout::SCCPopulations &pops, double tau,
                                          const PhysicalConstants &c = {});

/// Inputs to the sensitivity formula. The readout noise is either a fitted
/// curve of t_R or a constant.
struct SensitivityBudget {
  std::optional<est::NoiseCurve> noise_curve;
  double sigma_R = 1.0; ///< used when noise_curve is empty
  double tau = 0.0;     ///< s
  double t_I = 0.0;     ///< s
  double t_R = 0.0;     ///< s
  PhysicalConstants constants;

  [[nodiscard]] double readout_noise() const;
};

/// eta = (pi hbar / (2 g mu_B)) sigma_R sqrt(tau + t_I + t_R) / tau, in T/sqrt(Hz).
[[nodiscard]] double sensitivity(const SensitivityBudget &budget, double sigma_R);
[[nodiscard]] double sensitivity(const SensitivityBudget &budget);

struct SensitivityOptimum {
  double t_R = 0.0;
  double eta = 0.0;
  double sigma_R = 0.0;
  bool boundary = false;
};

struct ReadoutBracket {
  double t_min = 1e-7;
  double t_max = 1e-2;
};

/// Minimizes f(t_R) sqrt(t_I + t_R + tau) over the bracket (log-scale scan
/// then Brent). A constant noise level puts the optimum at t_min.
[[nodiscard]] SensitivityOptimum optimize_sensitivity(const SensitivityBudget &budget,
                                                      const ReadoutBracket &bracket = {});

/// Fixed-noise readout for comparison curves.
struct ConventionalScheme {
  std::string name;
  double sigma_R;
  double t_I; ///< s
  double t_R; ///< s

  static ConventionalScheme nanobeam() { return {"conventional_10.6", readout::kConventionalNanobeam, 1e-6, 0.2e-6}; }
  static ConventionalScheme bulk() { return {"conventional_20", readout::kConventionalBulk, 1e-6, 0.2e-6}; }
};

struct CurveRow {
  double tau;
  double t_R_opt;
  double eta;
  std::string scheme;

  friend bool operator==(const CurveRow &, const CurveRow &) = default;
};

/// eta(tau) for SCC readout (scheme "scc"), followed by each conventional
/// scheme. With a noise curve t_R is optimized per tau; with a constant
/// sigma_R the budget's t_R is used as given.
/// Rows are grouped by scheme, taus in input order.
[[nodiscard]] std::vector<CurveRow> sensitivity_curve(const SensitivityBudget &scc_budget,
                                                      const std::vector<double> &taus,
                                                      const std::vector<ConventionalScheme> &conventional,
                                                      const ReadoutBracket &bracket = {});

} // namespace scc::mag
