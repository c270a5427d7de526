#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace scc::opt {

using Objective = std::function<double(const std::vector<double> &)>;

struct NelderMeadOptions {
  std::size_t max_evals = 2000;
  /// Stop when the spread of simplex values is below f_tol_abs + f_tol_rel*|f|
  /// and the simplex diameter is below x_tol.
  double f_tol_abs = 1e-10;
  double f_tol_rel = 1e-12;
  double x_tol = 1e-8;
  /// Restart from the best vertex until a restart no longer improves f.
  std::size_t max_restarts = 4;
};

struct MinimizeResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Derivative-free simplex descent (Nelder-Mead with the standard
/// reflection/expansion/contraction/shrink coefficients 1, 2, 1/2, 1/2).
/// `step[i]` sets the initial simplex edge along coordinate i.
MinimizeResult nelder_mead(const Objective &f, std::vector<double> x0,
                           const std::vector<double> &step,
                           const NelderMeadOptions &opts = {});

struct ScalarResult {
  double x = 0.0;
  double value = 0.0;
  std::size_t evaluations = 0;
};

/// Brent's method for a minimum on [lo, hi].
ScalarResult brent_minimize(const std::function<double(double)> &f, double lo,
                            double hi, double x_tol = 1e-10,
                            std::size_t max_evals = 200);

/// Minimizes f on [lo, hi] by scanning `grid` equally spaced points and then
/// running Brent inside the bracket around the best grid point. Robust to
/// mild multimodality.
ScalarResult scan_then_brent(const std::function<double(double)> &f, double lo,
                             double hi, std::size_t grid = 40,
                             double x_tol = 1e-10);

using Residuals = std::function<Eigen::VectorXd(const Eigen::VectorXd &)>;

struct LeastSquaresOptions {
  std::size_t max_iterations = 500;
  double grad_tol = 1e-14;
  double step_tol = 1e-13;
  double cost_tol = 1e-16;
  /// Relative central-difference step for the Jacobian.
  double fd_step = 6e-6;
};

struct LeastSquaresResult {
  Eigen::VectorXd x;
  Eigen::VectorXd residuals;
  Eigen::MatrixXd jacobian;
  double cost = 0.0; ///< sum of squared residuals
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Levenberg-Marquardt with a finite-difference Jacobian.
LeastSquaresResult levenberg_marquardt(const Residuals &r, Eigen::VectorXd x0,
                                       const LeastSquaresOptions &opts = {});

Eigen::MatrixXd numerical_jacobian(const Residuals &r, const Eigen::VectorXd &x,
                                   double rel_step, std::size_t *evaluations = nullptr);

/// Central-difference Hessian with per-coordinate absolute steps.
Eigen::MatrixXd numerical_hessian(const Objective &f, const std::vector<double> &x,
                                  const std::vector<double> &step,
                                  std::size_t *evaluations = nullptr);

/// Linearized parameter covariance s^2 (J^T J)^{-1} for a least-squares fit,
/// where s^2 = cost / (m - n) when `scale_by_residual` is set (unknown noise
/// level) and 1 otherwise (residuals already divided by known sigmas).
/// Returns an empty matrix if J^T J is numerically singular.
Eigen::MatrixXd least_squares_covariance(const LeastSquaresResult &fit,
                                         bool scale_by_residual);

} // namespace scc::opt
