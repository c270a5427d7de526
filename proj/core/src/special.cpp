#include "scc/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "scc/errors.hpp"

namespace scc::special {
namespace {

// Below this argument the ascending series is used; above it the large-x
// expansion has already converged to full double precision.
constexpr double kAsymptoticCutoff = 40.0;

// I_nu(x) = sum_k (x/2)^{2k+nu} / (k! (k+nu)!). All terms are positive, so the
// sum is stable; only the cost grows with x.
double bessel_series(int nu, double x) {
  const double half = 0.5 * x;
  const double q = half * half;
  double term = (nu == 0) ? 1.0 : half;
  double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(k + nu));
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return sum;
}

// e^{-x} I_nu(x) ~ (2 pi x)^{-1/2} sum_k (-1)^k prod_{j=1..k} (4nu^2-(2j-1)^2) / (k! (8x)^k)
double bessel_scaled_asymptotic(int nu, double x) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = -term * (mu - odd * odd) / (k * 8.0 * x);
    if (std::fabs(next) >= std::fabs(term)) break; // series started diverging
    term = next;
    sum += term;
    if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

double bessel_scaled(int nu, double x) {
  if (!(x >= 0.0)) throw InvalidArgument("modified Bessel function needs x >= 0");
  if (std::isinf(x)) return 0.0;
  if (x < kAsymptoticCutoff) return std::exp(-x) * bessel_series(nu, x);
  return bessel_scaled_asymptotic(nu, x);
}

} // namespace

double bessel_i0_scaled(double x) { return bessel_scaled(0, x); }

double bessel_i1_scaled(double x) { return bessel_scaled(1, x); }

double log_poisson_pmf(double mean, std::size_t n) {
  if (mean <= 0.0) {
    return n == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  }
  const double k = static_cast<double>(n);
  return -mean + k * std::log(mean) - std::lgamma(k + 1.0);
}

void poisson_pmf_range(double mean, double log_scale, std::span<double> out) {
  if (out.empty()) return;
  const std::size_t last = out.size() - 1;
  if (mean <= 0.0) {
    out[0] = std::exp(log_scale);
    for (std::size_t n = 1; n <= last; ++n) out[n] = 0.0;
    return;
  }
  auto mode = static_cast<std::size_t>(std::floor(mean));
  if (mode > last) mode = last;
  const double peak = std::exp(log_scale + log_poisson_pmf(mean, mode));
  out[mode] = peak;
  double p = peak;
  for (std::size_t n = mode + 1; n <= last; ++n) {
    p *= mean / static_cast<double>(n);
    out[n] = p;
  }
  p = peak;
  for (std::size_t n = mode; n > 0; --n) {
    p *= static_cast<double>(n) / mean;
    out[n - 1] = p;
  }
}

double exp_modified_gaussian(double t, double sigma, double tau) {
  if (!(sigma > 0.0) || !(tau > 0.0)) {
    throw InvalidArgument("exponentially modified Gaussian needs sigma, tau > 0");
  }
  // z = (sigma/tau - t/sigma)/sqrt(2); density = (1/(2 tau)) exp(sigma^2/(2 tau^2) - t/tau) erfc(z)
  const double z = (sigma / tau - t / sigma) / std::numbers::sqrt2;
  if (z < 5.0) {
    return 0.5 / tau *
           std::exp(0.5 * sigma * sigma / (tau * tau) - t / tau) * std::erfc(z);
  }
  // Far left tail: exp(a) * erfc(z) with both factors out of range. Use
  // erfc(z) ~ exp(-z^2)/(z sqrt(pi)) (1 - 1/(2z^2) + 3/(4z^4)) and fold the
  // exponents together; a - z^2 = -t^2 / (2 sigma^2).
  const double z2 = z * z;
  const double series = 1.0 - 0.5 / z2 + 0.75 / (z2 * z2) - 1.875 / (z2 * z2 * z2);
  return 0.5 / tau * std::exp(-0.5 * t * t / (sigma * sigma)) * series /
         (z * std::sqrt(std::numbers::pi));
}

} // namespace scc::special
