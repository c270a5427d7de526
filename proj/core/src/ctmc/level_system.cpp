#include "scc/ctmc/level_system.hpp"

#include <algorithm>
#include <cmath>

#include "scc/errors.hpp"
#include "scc/random.hpp"

namespace scc::ctmc {

std::size_t LevelSystem::add_level(std::string name) {
  if (std::find(levels_.begin(), levels_.end(), name) != levels_.end()) {
    throw InvalidArgument("duplicate level name '" + name + "'");
  }
  levels_.push_back(std::move(name));
  return levels_.size() - 1;
}

std::size_t LevelSystem::add_transition(std::string name, std::string_view from,
                                        std::string_view to, double rate,
                                        bool emits_photon, bool collected) {
  for (const auto &t : transitions_) {
    if (t.name == name) throw InvalidArgument("duplicate transition name '" + name + "'");
  }
  Transition t{std::move(name), level_index(from), level_index(to), rate, emits_photon,
               collected};
  if (t.from == t.to) throw InvalidArgument("transition '" + t.name + "' is a self-loop");
  if (!(rate >= 0.0) || !std::isfinite(rate)) {
    throw InvalidArgument("transition '" + t.name + "' needs a finite rate >= 0");
  }
  if (collected && !emits_photon) {
    throw InvalidArgument("transition '" + t.name + "' is collected but emits no photon");
  }
  transitions_.push_back(std::move(t));
  return transitions_.size() - 1;
}

std::size_t LevelSystem::level_index(std::string_view name) const {
  const auto it = std::find(levels_.begin(), levels_.end(), name);
  if (it == levels_.end()) throw UnknownName("unknown level '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - levels_.begin());
}

std::size_t LevelSystem::transition_index(std::string_view name) const {
  for (std::size_t i = 0; i < transitions_.size(); ++i) {
    if (transitions_[i].name == name) return i;
  }
  throw UnknownName("unknown transition '" + std::string(name) + "'");
}

namespace {

// Rates of every transition during one segment.
std::vector<double> segment_rates(const LevelSystem &system, const Segment &segment) {
  if (!(segment.duration >= 0.0)) throw InvalidArgument("segment duration must be >= 0");
  std::vector<double> rates;
  rates.reserve(system.transitions().size());
  for (const auto &t : system.transitions()) rates.push_back(t.rate);
  for (const auto &[name, rate] : segment.rate_overrides) {
    if (!(rate >= 0.0) || !std::isfinite(rate)) {
      throw InvalidArgument("override for '" + name + "' needs a finite rate >= 0");
    }
    rates[system.transition_index(name)] = rate;
  }
  return rates;
}

// outgoing[level] = indices of transitions leaving it.
std::vector<std::vector<std::size_t>> outgoing_table(const LevelSystem &system) {
  std::vector<std::vector<std::size_t>> out(system.size());
  for (std::size_t i = 0; i < system.transitions().size(); ++i) {
    out[system.transitions()[i].from].push_back(i);
  }
  return out;
}

} // namespace

Trajectory simulate_sequence(const LevelSystem &system, const std::vector<Segment> &segments,
                             std::string_view initial, std::uint64_t seed) {
  Trajectory traj;
  traj.rng_seed = seed;
  std::size_t state = system.level_index(initial);
  traj.states_visited.push_back(state);

  // Resolve every override before drawing anything.
  std::vector<std::vector<double>> rates_per_segment;
  rates_per_segment.reserve(segments.size());
  for (const auto &seg : segments) rates_per_segment.push_back(segment_rates(system, seg));

  const auto outgoing = outgoing_table(system);
  Rng rng(seed);
  double t = 0.0;
  for (std::size_t k = 0; k < segments.size(); ++k) {
    const auto &rates = rates_per_segment[k];
    const double end = t + segments[k].duration;
    for (;;) {
      double total = 0.0;
      for (const std::size_t i : outgoing[state]) total += rates[i];
      const double dwell = rng.exponential(total);
      if (!(t + dwell < end)) break; // memoryless: restart the clock next segment
      double next_t = t + dwell;
      if (next_t <= t) next_t = std::nextafter(t, end);
      double pick = rng.uniform() * total;
      std::size_t chosen = outgoing[state].back();
      for (const std::size_t i : outgoing[state]) {
        if (pick < rates[i]) {
          chosen = i;
          break;
        }
        pick -= rates[i];
      }
      // Never pick a zero-rate channel through round-off in the subtraction.
      if (rates[chosen] == 0.0) {
        for (const std::size_t i : outgoing[state]) {
          if (rates[i] > 0.0) chosen = i;
        }
      }
      const Transition &tr = system.transitions()[chosen];
      t = next_t;
      state = tr.to;
      traj.jump_times.push_back(t);
      traj.states_visited.push_back(state);
      if (tr.collected) traj.photon_times.push_back(t);
    }
    t = end;
  }
  traj.duration = t;
  return traj;
}

std::vector<double> propagate_populations(const LevelSystem &system,
                                          const std::vector<Segment> &segments,
                                          std::vector<double> p) {
  if (p.size() != system.size()) {
    throw InvalidArgument("initial population vector has the wrong length");
  }
  const auto &transitions = system.transitions();
  std::vector<double> next(p.size()), term(p.size());
  for (const auto &seg : segments) {
    const auto rates = segment_rates(system, seg);
    std::vector<double> exit(system.size(), 0.0);
    for (std::size_t i = 0; i < transitions.size(); ++i) exit[transitions[i].from] += rates[i];
    const double lambda = *std::max_element(exit.begin(), exit.end());
    if (lambda == 0.0 || seg.duration == 0.0) continue;

    // Uniformized chain P = I + Q / lambda; sub-steps keep lambda*dt <= 20 so
    // the Poisson weights stay well inside double range.
    const auto steps = static_cast<std::size_t>(std::ceil(lambda * seg.duration / 20.0));
    const double mu = lambda * seg.duration / static_cast<double>(steps);
    for (std::size_t s = 0; s < steps; ++s) {
      std::fill(next.begin(), next.end(), 0.0);
      term = p;
      double weight = std::exp(-mu);
      double accumulated = weight;
      for (std::size_t j = 0; j < p.size(); ++j) next[j] = weight * term[j];
      for (std::size_t k = 1; k < 400 && accumulated < 1.0 - 1e-16; ++k) {
        std::vector<double> applied(p.size(), 0.0);
        for (std::size_t j = 0; j < p.size(); ++j) {
          applied[j] += term[j] * (1.0 - exit[j] / lambda);
        }
        for (std::size_t i = 0; i < transitions.size(); ++i) {
          applied[transitions[i].to] += term[transitions[i].from] * rates[i] / lambda;
        }
        term.swap(applied);
        weight *= mu / static_cast<double>(k);
        accumulated += weight;
        for (std::size_t j = 0; j < p.size(); ++j) next[j] += weight * term[j];
      }
      p = next;
    }
  }
  return p;
}

LevelSystem telegraph_level_system(const RateSet &rates) {
  rates.validate();
  LevelSystem sys;
  sys.add_level("minus_a");
  sys.add_level("minus_b");
  sys.add_level("zero_a");
  sys.add_level("zero_b");
  sys.add_transition("emit_minus_ab", "minus_a", "minus_b", rates.gamma1, true, true);
  sys.add_transition("emit_minus_ba", "minus_b", "minus_a", rates.gamma1, true, true);
  sys.add_transition("emit_zero_ab", "zero_a", "zero_b", rates.gamma0, true, true);
  sys.add_transition("emit_zero_ba", "zero_b", "zero_a", rates.gamma0, true, true);
  sys.add_transition("ionize_a", "minus_a", "zero_a", rates.g1);
  sys.add_transition("ionize_b", "minus_b", "zero_a", rates.g1);
  sys.add_transition("recapture_a", "zero_a", "minus_a", rates.g0);
  sys.add_transition("recapture_b", "zero_b", "minus_a", rates.g0);
  return sys;
}

ChargeState telegraph_charge(const LevelSystem &system, std::size_t level) {
  const std::string &name = system.levels().at(level);
  return name.rfind("minus", 0) == 0 ? ChargeState::NVminus : ChargeState::NVzero;
}

} // namespace scc::ctmc
