#pragma once

#include <cstddef>
#include <span>

namespace scc::special {

/// e^{-x} I_0(x) for x >= 0.
[[nodiscard]] double bessel_i0_scaled(double x);

/// e^{-x} I_1(x) for x >= 0.
[[nodiscard]] double bessel_i1_scaled(double x);

/// log of the Poisson pmf; mean = 0 is handled (log 1 at n = 0, -inf elsewhere).
[[nodiscard]] double log_poisson_pmf(double mean, std::size_t n);

/// out[n] = exp(log_scale) * Poisson(mean, n) for n = 0..out.size()-1.
///
/// Starts at the mode in log space and recurses outward, so neither e^{-mean}
/// nor the scale factor needs to be representable on its own.
void poisson_pmf_range(double mean, double log_scale, std::span<double> out);

/// Exponentially modified Gaussian density: a unit-area exponential decay with
/// time constant `tau` starting at t = 0, convolved with a centred Gaussian of
/// width `sigma`.
[[nodiscard]] double exp_modified_gaussian(double t, double sigma, double tau);

} // namespace scc::special
