#include <gtest/gtest.h>

#include <cmath>

#include "scc/readout/optimize_readout.hpp"

namespace {

using scc::readout::RateLaws;
using scc::readout::ReadoutOptimum;

TEST(RateLaws, PublishedCoefficients) {
  const auto r = RateLaws::published().at(1.0);
  EXPECT_NEAR(r.g0, 39.0 / (1 + 1 / 134.0), 1e-9);
  EXPECT_NEAR(r.g1, 310.0 / (1 + 1 / 53.2), 1e-9);
  EXPECT_NEAR(r.gamma0, 1650.0 / (1 + 1 / 134.0) + 268, 1e-9);
  EXPECT_NEAR(r.gamma1, 46200.0 / (1 + 1 / 53.0) + 268, 1e-9);
}

TEST(OptimizePolicy, InteriorMaximumBeatsBothBounds) {
  const auto laws = RateLaws::published();
  const scc::readout::ReadoutSearch search;
  const auto opt = scc::readout::optimize_policy(laws, 2.0, 1, search);
  const auto rates = laws.at(2.0);
  const double at_lo = scc::readout::charge_fidelity(rates, {search.t_min, 1, {}});
  const double at_hi = scc::readout::charge_fidelity(rates, {search.t_max, 1, {}});
  EXPECT_GE(opt.fidelity, at_lo);
  EXPECT_GE(opt.fidelity, at_hi);
  EXPECT_FALSE(opt.boundary);
  EXPECT_NEAR(scc::readout::charge_fidelity(rates, {opt.t_R, 1, {}}), opt.fidelity, 1e-9);
}

TEST(OptimizePolicy, AgreesWithDenseGrid) {
  const auto laws = RateLaws::published();
  for (double P : {0.875, 5.0}) {
    for (std::size_t n : {1u, 3u}) {
      const auto opt = scc::readout::optimize_policy(laws, P, n);
      const auto rates = laws.at(P);
      double best = 0.0;
      for (int i = 0; i < 1000; ++i) {
        const double t = 1e-7 * std::pow(1e6, i / 999.0);
        best = std::max(best, scc::readout::charge_fidelity(rates, {t, n, {}}));
      }
      EXPECT_GE(opt.fidelity, best - 1e-9) << P << " " << n;
      EXPECT_LT(opt.fidelity - best, 1e-3) << P << " " << n;
    }
  }
}

TEST(OptimizeReadout, RowOrderAndMonotonePareto) {
  const std::vector<double> powers{0.875, 2, 5, 14.5};
  const std::vector<std::size_t> thresholds{1, 2, 3};
  const auto table = scc::readout::optimize_readout(RateLaws::published(), powers, thresholds);
  ASSERT_EQ(table.rows.size(), powers.size() * thresholds.size());
  EXPECT_EQ(table.rows[0].power_uW, 0.875);
  EXPECT_EQ(table.rows[1].n_thresh, 2u);
  ASSERT_FALSE(table.pareto.empty());
  for (std::size_t i = 1; i < table.pareto.size(); ++i) {
    EXPECT_GE(table.pareto[i].t_R, table.pareto[i - 1].t_R);
    EXPECT_GT(table.pareto[i].fidelity, table.pareto[i - 1].fidelity);
  }
}

TEST(OptimizeReadout, SingleCellGivesOneRow) {
  const auto table = scc::readout::optimize_readout(RateLaws::published(), {3.0}, {2});
  ASSERT_EQ(table.rows.size(), 1u);
  EXPECT_EQ(table.pareto.size(), 1u);
}

TEST(ParetoFront, TiesPreferSmallerThreshold) {
  std::vector<ReadoutOptimum> rows{{1.0, 2, 1e-4, 0.9, false}, {1.0, 1, 1e-4, 0.9 + 1e-8, false},
                                   {2.0, 1, 2e-4, 0.85, false}, {3.0, 3, 5e-4, 0.95, false}};
  const auto front = scc::readout::pareto_front(rows);
  ASSERT_EQ(front.size(), 2u);
  EXPECT_EQ(front[0].n_thresh, 1u);
  EXPECT_EQ(front[1].fidelity, 0.95);
}

TEST(FidelityEnvelope, TenMicrosecondsAndMillisecondScale) {
  const std::vector<double> grid{1e-6, 1e-5, 1e-4, 1e-3, 1e-2};
  const auto env = scc::readout::fidelity_envelope(RateLaws::published(), grid, 0.875, 14.5,
                                                   {1, 2, 3});
  ASSERT_EQ(env.size(), grid.size());
  EXPECT_NEAR(env[1].fidelity_at, 0.9, 0.05);
  EXPECT_GE(env[3].fidelity_env, 0.94);
  for (std::size_t i = 1; i < env.size(); ++i) {
    EXPECT_GE(env[i].fidelity_env, env[i - 1].fidelity_env);
    EXPECT_GE(env[i].fidelity_env, env[i].fidelity_at);
  }
}

} // namespace
