#include <gtest/gtest.h>

#include <cmath>

#include "scc/ctmc/telegraph.hpp"

namespace {

using scc::ctmc::ChargeState;
using scc::ctmc::RateSet;

TEST(SimulateWindow, ZeroDurationReturnsInitial) {
  const RateSet r{100, 200, 1e3, 1e4};
  for (const auto s : {ChargeState::NVminus, ChargeState::NVzero}) {
    const auto o = scc::ctmc::simulate_window(r, 0.0, s, std::uint64_t{9});
    EXPECT_EQ(o.photons, 0u);
    EXPECT_EQ(o.final_state, s);
  }
}

TEST(SimulateWindow, PurePoissonWithoutChargeDynamics) {
  const RateSet r{0, 0, 1e3, 2e4};
  const double t = 1e-3;
  const auto s = scc::ctmc::sample_windows(r, t, 1.0, 100000, 77);
  EXPECT_EQ(s.ended_in_minus, s.windows);
  const double mean = r.gamma1 * t;
  EXPECT_NEAR(s.mean_photons(), mean, 4.0 * std::sqrt(mean / 100000.0));
}

TEST(SimulateWindow, LongWindowsEndInSteadyState) {
  const RateSet r{300, 500, 0, 0};
  const double t = 50.0 / (r.g0 + r.g1);
  const auto s = scc::ctmc::sample_windows(r, t, 1.0, 1'000'000, 5);
  const double p = r.g0 / (r.g0 + r.g1);
  EXPECT_NEAR(s.fraction_ended_in_minus(), p, 4.0 * std::sqrt(p * (1 - p) / 1e6));
}

TEST(SimulateWindow, SeedDeterminesOutcome) {
  const RateSet r{300, 500, 2e3, 4e4};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    EXPECT_EQ(scc::ctmc::simulate_window(r, 5e-3, ChargeState::NVminus, seed),
              scc::ctmc::simulate_window(r, 5e-3, ChargeState::NVminus, seed));
  }
}

TEST(SampleWindows, IndependentOfThreadCount) {
  const RateSet r{300, 500, 2e3, 4e4};
  const auto a = scc::ctmc::sample_windows(r, 5e-3, 0.4, 20000, 123, 1);
  const auto b = scc::ctmc::sample_windows(r, 5e-3, 0.4, 20000, 123, 3);
  const auto c = scc::ctmc::sample_windows(r, 5e-3, 0.4, 20000, 123, 8);
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_EQ(a.counts, c.counts);
  EXPECT_EQ(a.ended_in_minus, c.ended_in_minus);
  EXPECT_EQ(a.started_in_minus, b.started_in_minus);
}

TEST(SampleWindows, InitialMixtureWeight) {
  const RateSet r{300, 500, 2e3, 4e4};
  const auto s = scc::ctmc::sample_windows(r, 1e-4, 0.3, 200000, 8);
  EXPECT_NEAR(static_cast<double>(s.started_in_minus) / 2e5, 0.3, 4.0 * std::sqrt(0.21 / 2e5));
}

} // namespace
