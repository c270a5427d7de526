#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "scc/ctmc/charge.hpp"
#include "scc/random.hpp"

namespace scc::ctmc {

struct WindowOutcome {
  std::uint64_t photons = 0;
  ChargeState final_state = ChargeState::NVminus;

  friend bool operator==(const WindowOutcome &, const WindowOutcome &) = default;
};

/// One counting window of the charge telegraph process: exponential dwell
/// times (rate g1 in NV-, g0 in NV0) and a Poisson photon count per dwell
/// segment with mean gamma_state * dwell.
WindowOutcome simulate_window(const RateSet &rates, double t_R, ChargeState initial,
                              Rng &rng);

/// Same, with a fresh generator seeded from `seed`.
WindowOutcome simulate_window(const RateSet &rates, double t_R, ChargeState initial,
                              std::uint64_t seed);

/// Aggregate of many independent windows.
struct WindowSample {
  /// counts[n] = number of windows that recorded n photons.
  std::vector<std::uint64_t> counts;
  std::uint64_t windows = 0;
  std::uint64_t ended_in_minus = 0;
  std::uint64_t started_in_minus = 0;
  /// Sum of photon numbers, for the empirical mean.
  std::uint64_t photon_sum = 0;

  [[nodiscard]] double mean_photons() const noexcept {
    return windows ? static_cast<double>(photon_sum) / static_cast<double>(windows) : 0.0;
  }
  [[nodiscard]] double fraction_ended_in_minus() const noexcept {
    return windows ? static_cast<double>(ended_in_minus) / static_cast<double>(windows) : 0.0;
  }
};

/// Runs `windows` windows; window i draws from Rng::stream(seed, i), first a
/// Bernoulli(p_minus) initial state, then the window itself. The result does
/// not depend on `threads` (0 = hardware concurrency).
WindowSample sample_windows(const RateSet &rates, double t_R, double p_minus,
                            std::uint64_t windows, std::uint64_t seed,
                            unsigned threads = 0);

} // namespace scc::ctmc
