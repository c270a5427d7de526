#include <gtest/gtest.h>

#include <cmath>

#include "scc/ctmc/telegraph.hpp"
#include "scc/errors.hpp"
#include "scc/random.hpp"
#include "scc/readout/policy.hpp"

namespace {

using scc::ctmc::ChargeState;
using scc::ctmc::RateSet;
using scc::readout::ReadoutPolicy;

TEST(Classify, ThresholdIsInclusive) {
  const ReadoutPolicy p{1e-3, 3, {}};
  EXPECT_EQ(scc::readout::classify(0, p), ChargeState::NVzero);
  EXPECT_EQ(scc::readout::classify(2, p), ChargeState::NVzero);
  EXPECT_EQ(scc::readout::classify(3, p), ChargeState::NVminus);
  static_assert(scc::readout::classify(1, ReadoutPolicy{1.0, 1, {}}) == ChargeState::NVminus);
}

TEST(ReadoutPolicy, Validation) {
  EXPECT_THROW((ReadoutPolicy{0.0, 1, {}}.validate()), scc::InvalidArgument);
  EXPECT_THROW((ReadoutPolicy{1e-3, 0, {}}.validate()), scc::InvalidArgument);
}

TEST(AssignmentProb, PoissonTailWithoutSwitching) {
  const RateSet r{0, 0, 0, 1e4};
  const double p = scc::readout::assignment_prob(r, {1e-3, 1, {}}, ChargeState::NVminus);
  EXPECT_NEAR(p, 1 - std::exp(-10.0), 1e-10);
  EXPECT_NEAR(scc::readout::assignment_prob(r, {1e-3, 1, {}}, ChargeState::NVzero), 0.0, 1e-12);
}

TEST(AssignmentProb, VanishesForShortWindows) {
  const RateSet r{300, 800, 2e3, 4e4};
  for (auto s : {ChargeState::NVminus, ChargeState::NVzero}) {
    EXPECT_LT(scc::readout::assignment_prob(r, {1e-9, 1, {}}, s), 1e-4);
  }
}

TEST(AssignmentProb, MatchesMonteCarlo) {
  scc::Rng rng(4242);
  for (int k = 0; k < 2; ++k) {
    const RateSet r{50 + 500 * rng.uniform(), 50 + 500 * rng.uniform(), 1e3 + 4e3 * rng.uniform(),
                    1e4 + 4e4 * rng.uniform()};
    const double t_R = 1e-3;
    const ReadoutPolicy pol{t_R, 5 + static_cast<std::size_t>(10 * rng.uniform()), {}};
    for (auto s : {ChargeState::NVminus, ChargeState::NVzero}) {
      const double p_minus = s == ChargeState::NVminus ? 1.0 : 0.0;
      const std::uint64_t n = 1000000;
      const auto sample = scc::ctmc::sample_windows(r, t_R, p_minus, n, 900 + k);
      std::uint64_t tail = 0;
      for (std::size_t i = pol.n_thresh; i < sample.counts.size(); ++i) tail += sample.counts[i];
      const double freq = static_cast<double>(tail) / static_cast<double>(n);
      const double p = scc::readout::assignment_prob(r, pol, s);
      const double se = std::sqrt(std::max(p * (1 - p), 1e-12) / static_cast<double>(n));
      EXPECT_LT(std::fabs(freq - p), 4 * se) << "set " << k;
    }
  }
}

TEST(ChargeFidelity, PerfectSeparationApproachesOne) {
  const RateSet r{0, 0, 0, 1e5};
  EXPECT_NEAR(scc::readout::charge_fidelity(r, {1e-3, 1, {}}), 1.0, 1e-12);
}

TEST(ChargeFidelity, NoInformationAtZeroTime) {
  const RateSet r{300, 800, 2e3, 4e4};
  EXPECT_NEAR(scc::readout::charge_fidelity(r, {1e-10, 1, {}}), 0.5, 1e-5);
}

TEST(ChargeFidelity, BalancedFormula) {
  const scc::readout::AssignmentProbs probs{0.9, 0.2};
  EXPECT_DOUBLE_EQ(scc::readout::charge_fidelity(probs), 0.5 * 0.9 + 0.5 * 0.8);
  EXPECT_DOUBLE_EQ(scc::readout::charge_fidelity(probs, 0.25), 0.25 * 0.9 + 0.75 * 0.8);
}

TEST(ChargeFidelity, BestRuleNeverBelowHalf) {
  scc::Rng rng(17);
  for (int k = 0; k < 30; ++k) {
    const RateSet r{1e3 * rng.uniform(), 1e3 * rng.uniform(), 5e4 * rng.uniform(),
                    5e4 * rng.uniform()};
    const ReadoutPolicy pol{1e-5 + 1e-3 * rng.uniform(), 1 + static_cast<std::size_t>(5 * rng.uniform()), {}};
    EXPECT_GE(scc::readout::best_rule_fidelity(r, pol), 0.5 - 1e-12);
  }
}

TEST(EffectiveBeta, PerfectReadoutIsIdentity) {
  const scc::readout::AssignmentProbs perfect{1.0, 0.0};
  for (double b : {0.0, 0.162, 0.504, 1.0}) {
    EXPECT_DOUBLE_EQ(scc::readout::effective_beta(b, perfect), b);
  }
}

TEST(EffectiveBeta, SymmetricConfusionAtHalf) {
  EXPECT_DOUBLE_EQ(scc::readout::effective_beta(0.5, {0.8, 0.2}), 0.5);
}

TEST(EffectiveBeta, MonotoneInBeta) {
  const RateSet r{300, 800, 2e3, 4e4};
  const ReadoutPolicy pol{1e-4, 2, {}};
  double prev = -1.0;
  for (int i = 0; i <= 20; ++i) {
    const double b = scc::readout::effective_beta(i / 20.0, r, pol);
    EXPECT_GT(b, prev);
    prev = b;
  }
  EXPECT_THROW((void)scc::readout::effective_beta(1.5, {0.9, 0.1}), scc::InvalidArgument);
}

TEST(EffectiveBeta, MatchesMonteCarlo) {
  const RateSet r{400, 1500, 3e3, 6e4};
  const ReadoutPolicy pol{2e-4, 3, {}};
  const double beta = 0.37;
  const std::uint64_t n = 1000000;
  const auto sample = scc::ctmc::sample_windows(r, pol.t_R, beta, n, 31337);
  std::uint64_t tail = 0;
  for (std::size_t i = pol.n_thresh; i < sample.counts.size(); ++i) tail += sample.counts[i];
  const double freq = static_cast<double>(tail) / static_cast<double>(n);
  const double p = scc::readout::effective_beta(beta, r, pol);
  EXPECT_LT(std::fabs(freq - p), 4 * std::sqrt(p * (1 - p) / static_cast<double>(n)));
}

} // namespace
