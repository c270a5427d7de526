#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "scc/ctmc/charge.hpp"

namespace scc::ctmc {

struct Transition {
  std::string name;
  std::size_t from = 0;
  std::size_t to = 0;
  double rate = 0.0; ///< 1/s
  bool emits_photon = false;
  bool collected = false;
};

/// A finite-state continuous-time Markov chain over named levels, e.g. the
/// NV-/NV0 scheme g-, e-, s, g0, e0. Transition rates are the defaults; a pulse
/// segment may override any of them by transition name.
class LevelSystem {
public:
  /// Returns the new level's index. Throws InvalidArgument on a duplicate name.
  std::size_t add_level(std::string name);

  /// Throws UnknownName for undeclared levels, InvalidArgument for a
  /// self-loop, a negative rate, a duplicate name, or collected without emits.
  std::size_t add_transition(std::string name, std::string_view from, std::string_view to,
                             double rate, bool emits_photon = false, bool collected = false);

  [[nodiscard]] std::size_t level_index(std::string_view name) const;
  [[nodiscard]] std::size_t transition_index(std::string_view name) const;

  [[nodiscard]] const std::vector<std::string> &levels() const noexcept { return levels_; }
  [[nodiscard]] const std::vector<Transition> &transitions() const noexcept {
    return transitions_;
  }
  [[nodiscard]] std::size_t size() const noexcept { return levels_.size(); }

private:
  std::vector<std::string> levels_;
  std::vector<Transition> transitions_;
};

/// Piecewise-constant drive: for `duration` seconds the named transitions run
/// at the overriding rates, all others at their declared rates.
struct Segment {
  double duration = 0.0;
  std::map<std::string, double, std::less<>> rate_overrides;
};

struct Trajectory {
  std::vector<double> jump_times;
  /// states_visited.size() == jump_times.size() + 1.
  std::vector<std::size_t> states_visited;
  std::vector<double> photon_times;
  std::uint64_t rng_seed = 0;
  double duration = 0.0;

  [[nodiscard]] std::size_t final_state() const { return states_visited.back(); }
};

/// Exact (Gillespie) simulation across the segments; the state carries over
/// segment boundaries. Photon times are recorded for collected transitions.
[[nodiscard]] Trajectory simulate_sequence(const LevelSystem &system,
                                           const std::vector<Segment> &segments,
                                           std::string_view initial, std::uint64_t seed);

/// Level populations after the segments, by uniformization of the master
/// equation (deterministic counterpart of simulate_sequence).
[[nodiscard]] std::vector<double> propagate_populations(const LevelSystem &system,
                                                        const std::vector<Segment> &segments,
                                                        std::vector<double> initial);

/// Four-level chain whose (photon count, final charge) law equals the charge
/// telegraph process for `rates`: each charge state is a pair of sublevels
/// that swap at the photon rate with a collected photon on every swap, and
/// both sublevels leave the charge state at its ionization rate.
/// Levels: "minus_a", "minus_b", "zero_a", "zero_b".
[[nodiscard]] LevelSystem telegraph_level_system(const RateSet &rates);

/// Charge of a level of telegraph_level_system().
[[nodiscard]] ChargeState telegraph_charge(const LevelSystem &system, std::size_t level);

} // namespace scc::ctmc
