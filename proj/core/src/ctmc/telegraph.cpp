#include "scc/ctmc/telegraph.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "scc/errors.hpp"

namespace scc::ctmc {

WindowOutcome simulate_window(const RateSet &rates, double t_R, ChargeState initial,
                              Rng &rng) {
  if (!(t_R >= 0.0)) throw InvalidArgument("simulate_window: t_R must be >= 0");
  WindowOutcome out{0, initial};
  double t = 0.0;
  ChargeState state = initial;
  while (t < t_R) {
    const double dwell = rng.exponential(rates.ionization(state));
    const double segment = std::min(dwell, t_R - t);
    out.photons += rng.poisson(rates.photon_rate(state) * segment);
    t += dwell;
    if (t < t_R) state = other(state);
  }
  out.final_state = state;
  return out;
}

WindowOutcome simulate_window(const RateSet &rates, double t_R, ChargeState initial,
                              std::uint64_t seed) {
  Rng rng(seed);
  return simulate_window(rates, t_R, initial, rng);
}

namespace {

void run_range(const RateSet &rates, double t_R, double p_minus, std::uint64_t first,
               std::uint64_t last, std::uint64_t seed, WindowSample &acc) {
  for (std::uint64_t i = first; i < last; ++i) {
    Rng rng = Rng::stream(seed, i);
    const bool minus = p_minus >= 1.0 || (p_minus > 0.0 && rng.bernoulli(p_minus));
    const WindowOutcome w =
        simulate_window(rates, t_R, minus ? ChargeState::NVminus : ChargeState::NVzero, rng);
    if (w.photons >= acc.counts.size()) acc.counts.resize(w.photons + 1, 0);
    ++acc.counts[w.photons];
    acc.photon_sum += w.photons;
    acc.started_in_minus += minus ? 1 : 0;
    acc.ended_in_minus += (w.final_state == ChargeState::NVminus) ? 1 : 0;
    ++acc.windows;
  }
}

} // namespace

WindowSample sample_windows(const RateSet &rates, double t_R, double p_minus,
                            std::uint64_t windows, std::uint64_t seed, unsigned threads) {
  rates.validate();
  if (!(p_minus >= 0.0 && p_minus <= 1.0)) {
    throw InvalidArgument("sample_windows: p_minus must lie in [0, 1]");
  }
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::uint64_t>(threads, std::max<std::uint64_t>(1, windows / 10000)));

  std::vector<WindowSample> parts(threads);
  if (threads == 1) {
    run_range(rates, t_R, p_minus, 0, windows, seed, parts[0]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned k = 0; k < threads; ++k) {
      const std::uint64_t first = windows * k / threads;
      const std::uint64_t last = windows * (k + 1) / threads;
      pool.emplace_back(run_range, std::cref(rates), t_R, p_minus, first, last, seed,
                        std::ref(parts[k]));
    }
    for (auto &th : pool) th.join();
  }

  // Integer sums: the merge is exact, so the split does not matter.
  WindowSample total;
  for (const auto &p : parts) {
    if (p.counts.size() > total.counts.size()) total.counts.resize(p.counts.size(), 0);
    for (std::size_t n = 0; n < p.counts.size(); ++n) total.counts[n] += p.counts[n];
    total.windows += p.windows;
    total.ended_in_minus += p.ended_in_minus;
    total.started_in_minus += p.started_in_minus;
    total.photon_sum += p.photon_sum;
  }
  return total;
}

} // namespace scc::ctmc
