#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "scc/estimators/spin_echo.hpp"

namespace {

TEST(EchoModel, RevivalPeaksAtMultiplesOfPeriod) {
  const auto m = fixtures::published_echo();
  EXPECT_GT(m(m.T_rev), m(1.5 * m.T_rev));
  EXPECT_NEAR(m(0.0), m.A + m.B, 1e-9 * std::fabs(m.A + m.B) + 1e-12);
}

TEST(FitSpinEcho, NoiselessRecovery) {
  const auto truth = fixtures::published_echo();
  const auto fit = scc::est::fit_spin_echo(fixtures::echo_points(truth, 0.0, 1));
  EXPECT_TRUE(fit.converged);
  EXPECT_NEAR(fit.at("A"), truth.A, 1e-8);
  EXPECT_NEAR(fit.at("B"), truth.B, 1e-8);
  EXPECT_NEAR(fit.at("n"), truth.n, 1e-6 * truth.n);
  EXPECT_NEAR(fit.at("T2"), truth.T2, 1e-6 * truth.T2);
  EXPECT_NEAR(fit.at("T_rev"), truth.T_rev, 1e-6 * truth.T_rev);
  EXPECT_NEAR(fit.at("T_dec"), truth.T_dec, 1e-6 * truth.T_dec);
}

TEST(FitSpinEcho, NoisyWithinThreeSigma) {
  const auto truth = fixtures::published_echo();
  const auto fit = scc::est::fit_spin_echo(fixtures::echo_points(truth, 0.01, 2));
  const std::pair<const char *, double> pars[] = {{"A", truth.A},   {"B", truth.B},
                                                  {"T2", truth.T2}, {"T_rev", truth.T_rev},
                                                  {"T_dec", truth.T_dec}, {"n", truth.n}};
  for (const auto &[name, value] : pars) {
    EXPECT_LT(std::fabs(fit.at(name) - value), 3 * *fit.error(name)) << name;
  }
}

TEST(FitSpinEcho, FlatDataIsUnidentifiable) {
  auto truth = fixtures::published_echo();
  truth.B = 0.0;
  const auto fit = scc::est::fit_spin_echo(fixtures::echo_points(truth, 0.002, 3));
  EXPECT_TRUE(fit.has_flag("envelope_unidentifiable"));
  EXPECT_EQ(fit.at("B"), 0.0);
  EXPECT_NEAR(fit.at("A"), truth.A, 1e-3);
  EXPECT_EQ(fit.parameters.count("T2"), 0u);
}

TEST(FitSpinEcho, ModelRoundTrip) {
  const auto truth = fixtures::published_echo();
  const auto m =
      scc::est::echo_model_from(scc::est::fit_spin_echo(fixtures::echo_points(truth, 0.0, 1)));
  for (double tau : {0.0, 20e-6, 45e-6, 150e-6}) EXPECT_NEAR(m(tau), truth(tau), 1e-8);
}

} // namespace
