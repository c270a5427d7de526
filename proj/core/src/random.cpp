#include "scc/random.hpp"

#include <cmath>
#include <limits>

namespace scc {

double Rng::exponential(double rate) noexcept {
  if (rate <= 0.0) return std::numeric_limits<double>::infinity();
  // u in (0, 1), so the dwell is never exactly zero.
  const double u = (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  return -std::log(u) / rate;
}

std::uint64_t Rng::poisson(double mean) noexcept {
  if (!(mean > 0.0)) return 0;

  if (mean < 10.0) {
    // Sequential search on the CDF.
    double u = uniform();
    double p = std::exp(-mean);
    std::uint64_t k = 0;
    while (u > p) {
      u -= p;
      ++k;
      p *= mean / static_cast<double>(k);
      if (p <= 0.0) break;
    }
    return k;
  }

  // PTRS: W. Hormann, "The transformed rejection method for generating
  // Poisson random variables", Insurance: Math. & Econ. 12 (1993).
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);

  for (;;) {
    const double u = uniform() - 0.5;
    const double v = uniform();
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
        -mean + k * loglam - std::lgamma(k + 1.0)) {
      return static_cast<std::uint64_t>(k);
    }
  }
}

} // namespace scc
