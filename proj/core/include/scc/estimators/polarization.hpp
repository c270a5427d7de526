#pragma once

#include <vector>

#include "scc/estimators/fit_result.hpp"

namespace scc::est {

/// Time-binned fluorescence decay recorded after a Rabi pulse of length t_rabi.
/// `times` are bin centres in seconds relative to the excitation pulse.
struct DecayTrace {
  double t_rabi = 0.0;
  std::vector<double> times;
  std::vector<double> intensity;
};

struct PolarizationOptions {
  double tau0 = 18.2e-9; ///< ms = 0 excited-state lifetime, s
  double tau1 = 7.9e-9;  ///< ms = 1 excited-state lifetime, s
  /// Instrument-response width; the global search spans [1/25, 10] times this.
  double sigma_initial = 0.5e-9;
  std::size_t omega_grid = 400;
};

/// Decay model A0 F(t; sigma, tau0) + A1 F(t; sigma, tau1) + c with F the
/// unit-area exponentially modified Gaussian.
[[nodiscard]] double decay_model(double t, double sigma, double tau0, double tau1, double A0,
                                 double A1, double c);

/// Two-stage spin-polarization fit.
///
/// Stage 1 profiles a shared IRF width over all traces; for each width every
/// trace is a Poisson-weighted linear fit in (A0, A1, c), giving the ms = 0
/// fraction p0 = A0 / (A0 + A1). Stage 2 fits p0(t_rabi) = a cos(omega t) + c.
///
/// Parameters: "p0_<i>" per trace (input order), "sigma_irf", "a", "omega",
/// "c", "p0_at_zero" = a + c. Without a resolvable oscillation the result is
/// a = 0, p0_at_zero = c and the flag "omega_unidentifiable".
[[nodiscard]] FitResult fit_polarization(const std::vector<DecayTrace> &decays,
                                         const PolarizationOptions &opts = {});

} // namespace scc::est
