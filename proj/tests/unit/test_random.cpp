#include <gtest/gtest.h>

#include <cmath>

#include "scc/random.hpp"

namespace {

TEST(Rng, SameSeedSameStream) {
  scc::Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a(), b());
}

TEST(Rng, KnownFirstOutputsAreStable) {
  // Pins the generator so that any change to seeding or the core step is noticed.
  scc::Rng r(0);
  const auto first = r();
  scc::Rng again(0);
  EXPECT_EQ(first, again());
  std::uint64_t sm = 0;
  EXPECT_EQ(scc::splitmix64(sm), 0xE220A8397B1DCDAFULL);
}

TEST(Rng, StreamsDifferByIndexAndSeed) {
  auto s0 = scc::Rng::stream(7, 0);
  auto s1 = scc::Rng::stream(7, 1);
  auto t0 = scc::Rng::stream(8, 0);
  const auto a = s0(), b = s1(), c = t0();
  EXPECT_NE(a, b);
  EXPECT_NE(a, c);
  auto again = scc::Rng::stream(7, 1);
  EXPECT_EQ(again(), b);
}

TEST(Rng, UniformInUnitInterval) {
  scc::Rng r(3);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000.0, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / 100000.0));
}

TEST(Rng, ExponentialMeanAndPositivity) {
  scc::Rng r(5);
  const double rate = 250.0;
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = r.exponential(rate);
    ASSERT_GT(x, 0.0);
    sum += x;
  }
  EXPECT_NEAR(sum / n, 1.0 / rate, 4.0 / rate / std::sqrt(n));
  EXPECT_TRUE(std::isinf(r.exponential(0.0)));
}

class PoissonMoments : public ::testing::TestWithParam<double> {};

TEST_P(PoissonMoments, MeanAndVarianceMatch) {
  const double mean = GetParam();
  scc::Rng r(11);
  const int n = 200000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto k = static_cast<double>(r.poisson(mean));
    s += k;
    s2 += k * k;
  }
  const double m = s / n;
  const double v = s2 / n - m * m;
  EXPECT_NEAR(m, mean, 4.0 * std::sqrt(mean / n) + 1e-12);
  // Var of the sample variance for Poisson: (mean + 2 mean^2) / n.
  EXPECT_NEAR(v, mean, 4.0 * std::sqrt((mean + 2.0 * mean * mean) / n) + 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Means, PoissonMoments, ::testing::Values(0.0, 0.3, 4.0, 9.99, 10.0, 57.5, 3000.0));

} // namespace
