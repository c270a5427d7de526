#pragma once

#include <cstdint>
#include <vector>

#include "scc/ctmc/charge.hpp"
#include "scc/estimators/noise_curve.hpp"
#include "scc/estimators/polarization.hpp"
#include "scc/estimators/saturation.hpp"
#include "scc/estimators/spin_echo.hpp"
#include "scc/random.hpp"

namespace fixtures {

double gaussian(scc::Rng &rng);

/// Generator values of the published echo fit.
scc::est::EchoModel published_echo();
/// tau = 0..300 us in 1 us steps, optional Gaussian noise of sd `noise`.
std::vector<scc::est::EchoPoint> echo_points(const scc::est::EchoModel &m, double noise,
                                             std::uint64_t seed);

struct PolarizationTruth {
  double a = 0.42;
  double c = 0.50;
  double omega = 2.0 * 3.141592653589793 / 120e-9;
  double sigma = 0.6e-9;
  double tau0 = 18.2e-9;
  double tau1 = 7.9e-9;
  double photons_per_trace = 4e5;
  double background_per_bin = 20.0;
};
/// 12 Rabi durations over 0..220 ns, bins of 0.5 ns over [-5, 120] ns.
std::vector<scc::est::DecayTrace> polarization_decays(const PolarizationTruth &truth,
                                                      bool poisson_noise, std::uint64_t seed);

/// 16 log-spaced readout times in [1 us, 5 ms]; relative Gaussian noise.
std::vector<scc::est::NoisePoint> noise_points(double a, double b, double rel_noise,
                                               std::uint64_t seed);

/// Points of `law` at `powers`, errors = rel_err * rate, values perturbed by
/// that error when `noisy`.
std::vector<scc::est::SaturationPoint> saturation_points(const scc::est::SaturationModel &law,
                                                         const std::vector<double> &powers,
                                                         double rel_err, bool noisy,
                                                         std::uint64_t seed);

/// Readout-regime rate sets from the published laws and their window lengths:
/// 0.875 uW with 8 ms windows, then 2 and 5 uW with t_R = 2 / g1.
struct RegimeCase {
  double power_uW;
  scc::ctmc::RateSet rates;
  double t_R;
};
std::vector<RegimeCase> published_regimes();

/// Total-variation distance between a pmf and an empirical histogram.
double total_variation(const std::vector<double> &pmf, const std::vector<std::uint64_t> &counts);

} // namespace fixtures
