#include <gtest/gtest.h>

#include <cmath>

#include "scc/optimize.hpp"
#include "scc/quadrature.hpp"

namespace {

TEST(Quadrature, PolynomialIsExact) {
  const auto r = scc::quad::integrate_scalar([](double x) { return 3 * x * x + 2 * x + 1; }, 0, 2);
  EXPECT_NEAR(r.value[0], 8 + 4 + 2, 1e-13);
  EXPECT_TRUE(r.converged);
}

TEST(Quadrature, SqrtSingularityAdapts) {
  const auto r = scc::quad::integrate_scalar([](double x) { return 1.0 / std::sqrt(x); }, 0, 1);
  EXPECT_NEAR(r.value[0], 2.0, 1e-7);
}

TEST(Quadrature, VectorIntegrandAllComponents) {
  const auto r = scc::quad::integrate(
      [](double x, std::span<double> y) {
        y[0] = std::sin(x);
        y[1] = std::exp(-x);
      },
      0.0, M_PI, 2);
  EXPECT_NEAR(r.value[0], 2.0, 1e-12);
  EXPECT_NEAR(r.value[1], 1.0 - std::exp(-M_PI), 1e-12);
}

TEST(Quadrature, BudgetExhaustionIsReported) {
  scc::quad::Options o;
  o.max_subdivisions = 2;
  o.initial_panels = 1;
  o.rel_tol = 1e-14;
  o.abs_tol = 1e-16;
  const auto r = scc::quad::integrate_scalar([](double x) { return std::sin(200 * x); }, 0, 7, o);
  EXPECT_FALSE(r.converged);
}

TEST(NelderMead, Rosenbrock) {
  const scc::opt::Objective f = [](const std::vector<double> &x) {
    return 100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2);
  };
  scc::opt::NelderMeadOptions o;
  o.max_evals = 5000;
  const auto r = scc::opt::nelder_mead(f, {-1.2, 1.0}, {0.5, 0.5}, o);
  EXPECT_NEAR(r.x[0], 1.0, 1e-5);
  EXPECT_NEAR(r.x[1], 1.0, 1e-5);
  EXPECT_LE(r.evaluations, o.max_evals);
}

TEST(Brent, QuadraticMinimum) {
  const auto r = scc::opt::brent_minimize([](double x) { return (x - 0.3) * (x - 0.3); }, -1, 2);
  EXPECT_NEAR(r.x, 0.3, 1e-8);
}

TEST(ScanThenBrent, FindsGlobalOfTwoWells) {
  const auto f = [](double x) { return std::min((x - 1) * (x - 1) + 0.1, (x - 4) * (x - 4)); };
  const auto r = scc::opt::scan_then_brent(f, 0, 5, 50);
  EXPECT_NEAR(r.x, 4.0, 1e-7);
}

TEST(LevenbergMarquardt, ExponentialFitAndCovariance) {
  std::vector<double> t, y;
  for (int i = 0; i < 20; ++i) {
    t.push_back(i * 0.25);
    y.push_back(3.0 * std::exp(-0.7 * t.back()));
  }
  const scc::opt::Residuals r = [&](const Eigen::VectorXd &p) {
    Eigen::VectorXd out(20);
    for (int i = 0; i < 20; ++i) out[i] = p[0] * std::exp(-p[1] * t[i]) - y[i];
    return out;
  };
  Eigen::VectorXd x0(2);
  x0 << 1.0, 0.1;
  const auto fit = scc::opt::levenberg_marquardt(r, x0);
  EXPECT_TRUE(fit.converged);
  EXPECT_NEAR(fit.x[0], 3.0, 1e-9);
  EXPECT_NEAR(fit.x[1], 0.7, 1e-9);
  const auto cov = scc::opt::least_squares_covariance(fit, false);
  ASSERT_EQ(cov.rows(), 2);
  EXPECT_GT(cov(0, 0), 0.0);
}

TEST(NumericalHessian, Quadratic) {
  const scc::opt::Objective f = [](const std::vector<double> &x) {
    return 2 * x[0] * x[0] + 3 * x[0] * x[1] + 5 * x[1] * x[1];
  };
  const auto h = scc::opt::numerical_hessian(f, {0.3, -0.2}, {1e-3, 1e-3});
  EXPECT_NEAR(h(0, 0), 4.0, 1e-6);
  EXPECT_NEAR(h(0, 1), 3.0, 1e-6);
  EXPECT_NEAR(h(1, 1), 10.0, 1e-6);
}

} // namespace
