#include "scc/readout/noise.hpp"

#include <cmath>
#include <string>

#include "scc/errors.hpp"

namespace scc::readout {
namespace {

void check_probability(double p, const char *name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidArgument(std::string(name) + " must lie in [0, 1]");
  }
}

} // namespace

void SCCPopulations::validate() const {
  check_probability(beta0, "beta0");
  check_probability(beta1, "beta1");
  check_probability(beta0_tilde, "beta0_tilde");
  check_probability(beta1_tilde, "beta1_tilde");
}

double scc_noise(double b0, double b1) {
  check_probability(b0, "beta0_tilde");
  check_probability(b1, "beta1_tilde");
  if (b0 == b1) throw NoContrast("SCC populations have no contrast (beta0 == beta1)");
  const double d = b0 - b1;
  const double sum = b0 + b1;
  return std::sqrt(sum * (2.0 - sum) / (d * d));
}

double scc_noise(const SCCPopulations &pops) {
  pops.validate();
  return scc_noise(pops.beta0_tilde, pops.beta1_tilde);
}

double conventional_noise(double a0, double a1) {
  if (!(a0 >= 0.0) || !(a1 >= 0.0) || !std::isfinite(a0) || !std::isfinite(a1)) {
    throw InvalidArgument("mean photon counts must be finite and >= 0");
  }
  if (a0 == a1) throw NoContrast("photon counts have no contrast (alpha0 == alpha1)");
  const double d = a0 - a1;
  const double sum = a0 + a1;
  return std::sqrt(1.0 + 2.0 * sum / (d * d));
}

} // namespace scc::readout
