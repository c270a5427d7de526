#pragma once

#include <cstdint>
#include <string_view>

namespace scc::ctmc {

/// Charge state of the NV centre. NVminus > NVzero; the numeric values are
/// used for serialization.
enum class ChargeState : std::uint8_t { NVzero = 0, NVminus = 1 };

[[nodiscard]] constexpr ChargeState other(ChargeState s) noexcept {
  return s == ChargeState::NVminus ? ChargeState::NVzero : ChargeState::NVminus;
}

[[nodiscard]] constexpr std::string_view to_string(ChargeState s) noexcept {
  return s == ChargeState::NVminus ? "NV-" : "NV0";
}

/// Parses "NV-", "NVminus", "minus", "NV0", "NVzero", "zero".
[[nodiscard]] ChargeState parse_charge_state(std::string_view text);

/// Charge-dynamics rates at one illumination setting, all in 1/s.
///
///   g0      NV0 -> NV- recapture
///   g1      NV- -> NV0 ionization
///   gamma0  detected photon rate while in NV0
///   gamma1  detected photon rate while in NV-
///
/// No ordering between gamma0 and gamma1 is assumed.
struct RateSet {
  double g0 = 0.0;
  double g1 = 0.0;
  double gamma0 = 0.0;
  double gamma1 = 0.0;

  /// Throws InvalidArgument unless every rate is finite and >= 0.
  void validate() const;

  /// The 1 <-> 0 index exchange.
  [[nodiscard]] RateSet exchanged() const noexcept { return {g1, g0, gamma1, gamma0}; }

  [[nodiscard]] double ionization(ChargeState from) const noexcept {
    return from == ChargeState::NVminus ? g1 : g0;
  }
  [[nodiscard]] double photon_rate(ChargeState in) const noexcept {
    return in == ChargeState::NVminus ? gamma1 : gamma0;
  }

  friend bool operator==(const RateSet &, const RateSet &) = default;
};

struct SteadyState {
  double p_minus;
  double p_zero;
};

/// Stationary charge populations, p_minus = g0 / (g0 + g1).
/// Throws DegenerateRates when g0 = g1 = 0.
[[nodiscard]] SteadyState steady_state(const RateSet &rates);

} // namespace scc::ctmc
