#include "scc/ctmc/charge.hpp"

#include <cmath>
#include <string>

#include "scc/errors.hpp"

namespace scc::ctmc {

ChargeState parse_charge_state(std::string_view text) {
  if (text == "NV-" || text == "NVminus" || text == "minus") return ChargeState::NVminus;
  if (text == "NV0" || text == "NVzero" || text == "zero") return ChargeState::NVzero;
  throw InvalidArgument("unknown charge state '" + std::string(text) + "'");
}

void RateSet::validate() const {
  auto check = [](double v, const char *name) {
    if (!std::isfinite(v) || v < 0.0) {
      throw InvalidArgument(std::string("rate ") + name + " must be finite and >= 0");
    }
  };
  check(g0, "g0");
  check(g1, "g1");
  check(gamma0, "gamma0");
  check(gamma1, "gamma1");
}

SteadyState steady_state(const RateSet &rates) {
  rates.validate();
  const double total = rates.g0 + rates.g1;
  if (!(total > 0.0)) {
    throw DegenerateRates("steady state undefined: g0 = g1 = 0");
  }
  const double p_minus = rates.g0 / total;
  return {p_minus, 1.0 - p_minus};
}

} // namespace scc::ctmc
