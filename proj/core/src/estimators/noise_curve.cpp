#include "scc/estimators/noise_curve.hpp"

#include <cmath>
#include <set>
#include <string>

#include <Eigen/Dense>

#include "scc/errors.hpp"
#include "scc/optimize.hpp"

namespace scc::est {

double NoiseCurve::operator()(double t_R_seconds) const noexcept {
  return 1.0 + a * std::pow(t_R_seconds * 1e6, -b);
}

FitResult fit_noise_curve(const std::vector<NoisePoint> &points) {
  if (points.size() < 3) throw InvalidArgument("noise-curve fit needs at least 3 points");
  std::set<double> times;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto &p = points[i];
    if (!(p.t_R > 0.0) || !std::isfinite(p.t_R)) {
      throw InvalidArgument("noise-curve point " + std::to_string(i) + ": t_R must be > 0");
    }
    if (!(p.sigma_R > 1.0) || !std::isfinite(p.sigma_R)) {
      throw InvalidArgument("noise-curve point " + std::to_string(i) +
                            ": sigma_R must exceed 1, got " + std::to_string(p.sigma_R));
    }
    times.insert(p.t_R);
  }
  if (times.size() < 2) throw RankDeficient("noise-curve fit needs at least 2 distinct t_R");

  // log(sigma - 1) = log a - b log t
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto m = static_cast<double>(points.size());
  for (const auto &p : points) {
    const double x = std::log(p.t_R * 1e6), y = std::log(p.sigma_R - 1.0);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / m;

  const opt::Residuals residuals = [&](const Eigen::VectorXd &x) {
    const NoiseCurve c{x[0], x[1]};
    Eigen::VectorXd r(static_cast<Eigen::Index>(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i) {
      r[static_cast<Eigen::Index>(i)] = (c(points[i].t_R) - points[i].sigma_R) / points[i].sigma_R;
    }
    return r;
  };
  Eigen::VectorXd x0(2);
  x0 << std::exp(intercept), -slope;
  const auto fit = opt::levenberg_marquardt(residuals, x0);

  FitResult out;
  out.model = "readout_noise_power_law";
  out.objective_kind = kResidualSum;
  out.objective = fit.cost;
  out.converged = fit.converged;
  out.n_evals = fit.evaluations;
  out.parameters["a"] = fit.x[0];
  out.parameters["b"] = fit.x[1];
  out.units["a"] = "t_R in us";
  out.units["b"] = "1";
  const Eigen::MatrixXd cov = opt::least_squares_covariance(fit, true);
  if (cov.size() == 0) throw RankDeficient("noise-curve fit: singular design at the solution");
  out.standard_errors["a"] = std::sqrt(std::max(cov(0, 0), 0.0));
  out.standard_errors["b"] = std::sqrt(std::max(cov(1, 1), 0.0));
  return out;
}

NoiseCurve noise_curve_from(const FitResult &fit) { return {fit.at("a"), fit.at("b")}; }

} // namespace scc::est
