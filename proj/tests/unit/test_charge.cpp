#include <gtest/gtest.h>

#include <cmath>

#include "scc/ctmc/charge.hpp"
#include "scc/errors.hpp"

namespace {

using scc::ctmc::ChargeState;
using scc::ctmc::RateSet;

TEST(ChargeState, OrderingAndNames) {
  EXPECT_GT(ChargeState::NVminus, ChargeState::NVzero);
  EXPECT_EQ(scc::ctmc::other(ChargeState::NVminus), ChargeState::NVzero);
  EXPECT_EQ(scc::ctmc::parse_charge_state(scc::ctmc::to_string(ChargeState::NVzero)), ChargeState::NVzero);
  EXPECT_EQ(scc::ctmc::parse_charge_state("minus"), ChargeState::NVminus);
  EXPECT_THROW((void)scc::ctmc::parse_charge_state("NV+"), scc::Error);
}

TEST(RateSet, ValidationRejectsNegativeAndNonFinite) {
  EXPECT_NO_THROW((RateSet{0, 0, 0, 0}.validate()));
  EXPECT_THROW((RateSet{-1, 0, 0, 0}.validate()), scc::InvalidArgument);
  EXPECT_THROW((RateSet{0, 0, 0, std::nan("")}.validate()), scc::InvalidArgument);
}

TEST(RateSet, ExchangeIsAnInvolution) {
  const RateSet r{1, 2, 3, 4};
  EXPECT_EQ(r.exchanged(), (RateSet{2, 1, 4, 3}));
  EXPECT_EQ(r.exchanged().exchanged(), r);
}

TEST(SteadyState, SymmetricRates) {
  const auto s = scc::ctmc::steady_state({100, 100, 0, 0});
  EXPECT_DOUBLE_EQ(s.p_minus, 0.5);
  EXPECT_DOUBLE_EQ(s.p_zero, 0.5);
}

TEST(SteadyState, AbsorbingMinus) {
  const auto s = scc::ctmc::steady_state({50, 0, 0, 0});
  EXPECT_DOUBLE_EQ(s.p_minus, 1.0);
  EXPECT_DOUBLE_EQ(s.p_zero, 0.0);
}

TEST(SteadyState, PublishedLawsAtFiveMicrowatts) {
  const double p = 5.0;
  const double g0 = 39 * p * p / (1 + p / 134), g1 = 310 * p * p / (1 + p / 53.2);
  const auto s = scc::ctmc::steady_state({g0, g1, 0, 0});
  EXPECT_NEAR(s.p_minus, g0 / (g0 + g1), 1e-15);
  EXPECT_NEAR(s.p_minus, 0.117138, 1e-6);
  EXPECT_EQ(s.p_minus + s.p_zero, 1.0);
}

TEST(SteadyState, DegenerateRatesThrow) {
  EXPECT_THROW((void)scc::ctmc::steady_state({0, 0, 10, 10}), scc::DegenerateRates);
}

} // namespace
