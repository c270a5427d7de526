#include "scc/ctmc/photon_statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "scc/errors.hpp"
#include "scc/quadrature.hpp"
#include "scc/special.hpp"

namespace scc::ctmc {
namespace {

// P(N > n_max) for N ~ Poisson(mean), summed upward from n_max + 1.
double poisson_upper_tail(double mean, std::size_t n_max) {
  if (mean <= 0.0) return 0.0;
  const std::size_t start = n_max + 1;
  double term = std::exp(special::log_poisson_pmf(mean, start));
  double sum = 0.0;
  for (std::size_t n = start; n < start + 100000; ++n) {
    sum += term;
    term *= mean / static_cast<double>(n + 1);
    if (static_cast<double>(n + 1) > mean && term < 1e-20 * std::max(sum, 1e-300)) break;
  }
  return sum;
}

void check_window(const RateSet &rates, double t_R) {
  rates.validate();
  if (!(t_R > 0.0) || !std::isfinite(t_R)) {
    throw InvalidArgument("counting window t_R must be > 0");
  }
}

} // namespace

double PhotonCountDistribution::total() const noexcept {
  return std::accumulate(pmf.begin(), pmf.end(), 0.0);
}

double PhotonCountDistribution::mean() const noexcept {
  double m = 0.0;
  for (std::size_t n = 0; n < pmf.size(); ++n) m += static_cast<double>(n) * pmf[n];
  return m;
}

std::size_t default_n_max(const RateSet &rates, double t_R) {
  const double m = std::max(rates.gamma0, rates.gamma1) * t_R;
  return static_cast<std::size_t>(std::ceil(m + 10.0 * std::sqrt(m))) + 10;
}

JumpDensity jump_density(const RateSet &rates, double t_R, double tau) {
  if (!(tau >= 0.0 && tau <= t_R)) throw InvalidArgument("jump_density: tau outside [0, t_R]");
  const double rest = t_R - tau;
  const double x = 2.0 * std::sqrt(rates.g1 * rates.g0 * tau * rest);
  // (g0 - g1) tau - g0 t_R + x; the scaled Bessel functions absorb e^{-x}.
  const double log_common = -rates.g1 * tau - rates.g0 * rest + x;
  const double common = std::exp(log_common);
  JumpDensity d{};
  d.odd = rates.g1 * common * special::bessel_i0_scaled(x);
  if (rest > 0.0) {
    d.even = std::sqrt(rates.g1 * rates.g0 * tau / rest) * common *
             special::bessel_i1_scaled(x);
  } else {
    // tau -> t_R: I1(x) ~ x/2, so the even density tends to g1 g0 tau e^{-g1 t_R}.
    d.even = rates.g1 * rates.g0 * tau * std::exp(-rates.g1 * t_R);
  }
  return d;
}

ConditionalPmfs conditional_pmfs(const RateSet &rates, double t_R, std::size_t n_max,
                                 double tol, std::size_t max_subdivisions) {
  check_window(rates, t_R);
  if (!(tol > 0.0)) throw InvalidArgument("pmf tolerance must be > 0");

  const std::size_t width = n_max + 1;
  const double sqrt_g = std::sqrt(rates.g1 * rates.g0);
  std::vector<double> poisson(width);

  // theta in [0, pi/2], tau = t_R sin^2 theta (time in NV-), t_R - tau = t_R cos^2 theta.
  auto integrand = [&](double theta, std::span<double> out) {
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    const double tau = t_R * s * s;
    const double rest = t_R * c * c;
    const double x = 2.0 * t_R * s * c * sqrt_g;
    const double envelope = std::exp(-rates.g1 * tau - rates.g0 * rest + x);
    const double i0 = special::bessel_i0_scaled(x);
    const double i1 = special::bessel_i1_scaled(x);
    const double jac = 2.0 * t_R * s * c; // d tau / d theta
    const double w_minus =
        envelope * (rates.g1 * i0 * jac + 2.0 * t_R * sqrt_g * s * s * i1);
    const double w_zero =
        envelope * (rates.g0 * i0 * jac + 2.0 * t_R * sqrt_g * c * c * i1);

    if (w_minus == 0.0 && w_zero == 0.0) {
      std::fill(out.begin(), out.end(), 0.0);
      return;
    }
    special::poisson_pmf_range(rates.gamma1 * tau + rates.gamma0 * rest, 0.0, poisson);
    for (std::size_t n = 0; n < width; ++n) {
      out[n] = w_minus * poisson[n];
      out[width + n] = w_zero * poisson[n];
    }
  };

  quad::Options qopts;
  qopts.rel_tol = tol;
  qopts.abs_tol = 1e-3 * tol;
  qopts.max_subdivisions = max_subdivisions;
  const quad::Result r =
      quad::integrate(integrand, 0.0, 0.5 * std::numbers::pi, 2 * width, qopts);
  if (!r.converged) {
    throw QuadratureFailure("photon-count integral did not reach tol " +
                            std::to_string(tol) + " within " +
                            std::to_string(max_subdivisions) + " panels");
  }

  ConditionalPmfs out;
  out.from_minus.assign(r.value.begin(), r.value.begin() + static_cast<std::ptrdiff_t>(width));
  out.from_zero.assign(r.value.begin() + static_cast<std::ptrdiff_t>(width), r.value.end());
  out.panels = r.panels;
  out.evaluations = r.evaluations;

  // No-jump terms.
  std::vector<double> stay(width);
  special::poisson_pmf_range(rates.gamma1 * t_R, -rates.g1 * t_R, stay);
  for (std::size_t n = 0; n < width; ++n) out.from_minus[n] += stay[n];
  special::poisson_pmf_range(rates.gamma0 * t_R, -rates.g0 * t_R, stay);
  for (std::size_t n = 0; n < width; ++n) out.from_zero[n] += stay[n];

  // Quadrature noise can push a component a hair outside [0, 1] or the total a
  // hair above one; clip both back.
  for (auto *v : {&out.from_minus, &out.from_zero}) {
    double sum = 0.0;
    for (auto &p : *v) {
      p = std::clamp(p, 0.0, 1.0);
      sum += p;
    }
    if (sum > 1.0) {
      for (auto &p : *v) p /= sum;
    }
  }
  return out;
}

PhotonCountDistribution pmf_mixture(const RateSet &rates, double t_R, double p_minus,
                                    const PmfOptions &opts) {
  if (!(p_minus >= 0.0 && p_minus <= 1.0)) {
    throw InvalidArgument("mixture weight p_minus must lie in [0, 1]");
  }
  check_window(rates, t_R);
  const std::size_t n_max = opts.n_max.value_or(default_n_max(rates, t_R));
  const ConditionalPmfs c = conditional_pmfs(rates, t_R, n_max, opts.tol, opts.max_subdivisions);

  PhotonCountDistribution d;
  d.t_R = t_R;
  d.p_minus = p_minus;
  d.pmf.resize(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    d.pmf[n] = p_minus * c.from_minus[n] + (1.0 - p_minus) * c.from_zero[n];
  }
  // The count is stochastically below Poisson(max(gamma) t_R).
  const double m = std::max(rates.gamma0, rates.gamma1) * t_R;
  d.norm_tolerance = poisson_upper_tail(m, n_max) + 10.0 * opts.tol;
  return d;
}

PhotonCountDistribution pmf_analytic(const RateSet &rates, double t_R,
                                     ChargeState initial, const PmfOptions &opts) {
  return pmf_mixture(rates, t_R, initial == ChargeState::NVminus ? 1.0 : 0.0, opts);
}

} // namespace scc::ctmc
