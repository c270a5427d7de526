#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "scc/errors.hpp"
#include "scc/estimators/noise_curve.hpp"

namespace {

TEST(NoiseCurve, TimeIsInMicroseconds) {
  const scc::est::NoiseCurve f{7.5, 0.5};
  EXPECT_DOUBLE_EQ(f(1e-6), 8.5);
  EXPECT_DOUBLE_EQ(f(100e-6), 1.75);
  EXPECT_EQ(scc::est::NoiseCurve::kTimeUnit, "us");
}

TEST(FitNoiseCurve, NoiselessRecovery) {
  const auto fit = scc::est::fit_noise_curve(fixtures::noise_points(7.54, 0.146, 0.0, 1));
  EXPECT_NEAR(fit.at("a"), 7.54, 1e-8);
  EXPECT_NEAR(fit.at("b"), 0.146, 1e-10);
  EXPECT_EQ(fit.units.at("a"), "t_R in us");
}

TEST(FitNoiseCurve, NoisyWithinThreeSigma) {
  const auto fit = scc::est::fit_noise_curve(fixtures::noise_points(7.54, 0.146, 0.03, 2));
  EXPECT_LT(std::fabs(fit.at("a") - 7.54), 3 * *fit.error("a"));
  EXPECT_LT(std::fabs(fit.at("b") - 0.146), 3 * *fit.error("b"));
}

TEST(FitNoiseCurve, FlatCurveGivesZeroExponent) {
  const auto fit = scc::est::fit_noise_curve(fixtures::noise_points(7.54, 0.0, 0.0, 3));
  EXPECT_NEAR(fit.at("a"), 7.54, 1e-8);
  EXPECT_NEAR(fit.at("b"), 0.0, 1e-10);
}

TEST(FitNoiseCurve, RejectsNoiseAtOrBelowOne) {
  std::vector<scc::est::NoisePoint> pts{{1e-6, 3}, {1e-5, 1.0}, {1e-4, 1.5}};
  EXPECT_THROW((void)scc::est::fit_noise_curve(pts), scc::InvalidArgument);
}

TEST(FitNoiseCurve, CurveRoundTrip) {
  const auto c = scc::est::noise_curve_from(
      scc::est::fit_noise_curve(fixtures::noise_points(4.0, 0.4, 0.0, 1)));
  EXPECT_NEAR(c(5e-5), 1 + 4.0 * std::pow(50.0, -0.4), 1e-9);
}

} // namespace
