#include "scc/magnetometry/sensitivity.hpp"

#include <cmath>
#include <numbers>

#include "scc/errors.hpp"
#include "scc/optimize.hpp"

namespace scc::mag {
namespace {

void check_tau(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw InvalidArgument("echo time tau must be > 0");
}

} // namespace

double PhysicalConstants::field_prefactor() const noexcept {
  return std::numbers::pi * hbar / (2.0 * g_factor * mu_B);
}

double PhysicalConstants::phase_rate() const noexcept {
  return g_factor * mu_B / (std::numbers::pi * hbar);
}

double echo_signal(double field_T, double tau, const readout::SCCPopulations &pops,
                   const PhysicalConstants &c) {
  check_tau(tau);
  const double cs = std::cos(c.phase_rate() * field_T * tau);
  const double p0 = cs * cs;
  return p0 * pops.beta0_tilde + (1.0 - p0) * pops.beta1_tilde;
}

double echo_slope(double field_T, double tau, const readout::SCCPopulations &pops,
                  const PhysicalConstants &c) {
  check_tau(tau);
  const double k = c.phase_rate() * tau;
  return -k * std::sin(2.0 * k * field_T) * (pops.beta0_tilde - pops.beta1_tilde);
}

double min_detectable_field(const readout::SCCPopulations &pops, double tau,
                            const PhysicalConstants &c) {
  check_tau(tau);
  const double b0 = pops.beta0_tilde, b1 = pops.beta1_tilde;
  if (b0 == b1) throw NoContrast("SCC populations have no contrast (beta0 == beta1)");
  const double sigma_s = 0.5 * std::sqrt((b0 + b1) * (2.0 - b0 - b1));
  return sigma_s / (c.phase_rate() * tau * std::fabs(b0 - b1));
}

double SensitivityBudget::readout_noise() const {
  return noise_curve ? (*noise_curve)(t_R) : sigma_R;
}

double sensitivity(const SensitivityBudget &b, double sigma_R) {
  check_tau(b.tau);
  if (!(b.t_I >= 0.0) || !(b.t_R >= 0.0)) throw InvalidArgument("t_I and t_R must be >= 0");
  return b.constants.field_prefactor() * sigma_R * std::sqrt(b.tau + b.t_I + b.t_R) / b.tau;
}

double sensitivity(const SensitivityBudget &b) { return sensitivity(b, b.readout_noise()); }

SensitivityOptimum optimize_sensitivity(const SensitivityBudget &budget, const ReadoutBracket &br) {
  check_tau(budget.tau);
  if (!(br.t_min > 0.0) || !(br.t_max > br.t_min)) {
    throw InvalidArgument("readout bracket needs 0 < t_min < t_max");
  }
  SensitivityBudget b = budget;
  const auto cost = [&](double log_t) {
    b.t_R = std::exp(log_t);
    return b.readout_noise() * std::sqrt(b.t_I + b.t_R + b.tau);
  };
  const double lo = std::log(br.t_min), hi = std::log(br.t_max);
  const auto r = opt::scan_then_brent(cost, lo, hi, 200, 1e-12);
  b.t_R = std::exp(r.x);
  SensitivityOptimum out;
  out.t_R = b.t_R;
  out.sigma_R = b.readout_noise();
  out.eta = sensitivity(b, out.sigma_R);
  const double margin = 1e-6 * (hi - lo);
  out.boundary = r.x <= lo + margin || r.x >= hi - margin;
  return out;
}

std::vector<CurveRow> sensitivity_curve(const SensitivityBudget &scc_budget,
                                        const std::vector<double> &taus,
                                        const std::vector<ConventionalScheme> &conventional,
                                        const ReadoutBracket &bracket) {
  std::vector<CurveRow> rows;
  for (const double tau : taus) {
    SensitivityBudget b = scc_budget;
    b.tau = tau;
    if (b.noise_curve) {
      const auto best = optimize_sensitivity(b, bracket);
      rows.push_back({tau, best.t_R, best.eta, "scc"});
    } else {
      rows.push_back({tau, b.t_R, sensitivity(b), "scc"});
    }
  }
  for (const auto &scheme : conventional) {
    for (const double tau : taus) {
      SensitivityBudget b;
      b.constants = scc_budget.constants;
      b.tau = tau;
      b.t_I = scheme.t_I;
      b.t_R = scheme.t_R;
      rows.push_back({tau, scheme.t_R, sensitivity(b, scheme.sigma_R), scheme.name});
    }
  }
  return rows;
}

} // namespace scc::mag
