#include "scc/estimators/polarization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "scc/errors.hpp"
#include "scc/optimize.hpp"
#include "scc/special.hpp"

namespace scc::est {
namespace {

struct TraceFit {
  Eigen::Vector3d coef; // A0, A1, c
  Eigen::Matrix3d cov;
  double chi2 = 0.0;
};

TraceFit fit_trace(const DecayTrace &d, double sigma, double tau0, double tau1) {
  Eigen::Matrix3d xtwx = Eigen::Matrix3d::Zero();
  Eigen::Vector3d xtwy = Eigen::Vector3d::Zero();
  std::vector<Eigen::Vector3d> rows(d.times.size());
  for (std::size_t i = 0; i < d.times.size(); ++i) {
    rows[i] << special::exp_modified_gaussian(d.times[i], sigma, tau0),
        special::exp_modified_gaussian(d.times[i], sigma, tau1), 1.0;
    const double w = 1.0 / std::max(d.intensity[i], 1.0);
    xtwx += w * rows[i] * rows[i].transpose();
    xtwy += w * d.intensity[i] * rows[i];
  }
  TraceFit out;
  const Eigen::LDLT<Eigen::Matrix3d> ldlt(xtwx);
  out.coef = ldlt.solve(xtwy);
  out.cov = ldlt.solve(Eigen::Matrix3d::Identity());
  for (std::size_t i = 0; i < d.times.size(); ++i) {
    const double r = rows[i].dot(out.coef) - d.intensity[i];
    out.chi2 += r * r / std::max(d.intensity[i], 1.0);
  }
  return out;
}

struct CosineFit {
  double a, c, cost;
};

CosineFit cosine_at(const std::vector<double> &t, const std::vector<double> &y,
                    const std::vector<double> &w, double omega) {
  double s11 = 0, s1c = 0, scc = 0, s1y = 0, scy = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double k = std::cos(omega * t[i]);
    s11 += w[i];
    s1c += w[i] * k;
    scc += w[i] * k * k;
    s1y += w[i] * y[i];
    scy += w[i] * k * y[i];
  }
  const double det = s11 * scc - s1c * s1c;
  CosineFit f{0.0, s1y / s11, 0.0};
  if (std::fabs(det) > 1e-12 * s11 * scc) {
    f.a = (s11 * scy - s1c * s1y) / det;
    f.c = (scc * s1y - s1c * scy) / det;
  }
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double r = f.a * std::cos(omega * t[i]) + f.c - y[i];
    f.cost += w[i] * r * r;
  }
  return f;
}

} // namespace

double decay_model(double t, double sigma, double tau0, double tau1, double A0, double A1,
                   double c) {
  return A0 * special::exp_modified_gaussian(t, sigma, tau0) +
         A1 * special::exp_modified_gaussian(t, sigma, tau1) + c;
}

FitResult fit_polarization(const std::vector<DecayTrace> &decays,
                           const PolarizationOptions &opts) {
  if (decays.size() < 6) throw InvalidArgument("polarization fit needs at least 6 Rabi durations");
  if (!(opts.tau0 > 0.0) || !(opts.tau1 > 0.0) || opts.tau0 == opts.tau1) {
    throw InvalidArgument("polarization fit needs two distinct positive lifetimes");
  }
  if (!(opts.sigma_initial > 0.0)) throw InvalidArgument("IRF width must be positive");
  for (const auto &d : decays) {
    if (d.times.size() < 4 || d.times.size() != d.intensity.size()) {
      throw InvalidArgument("each decay needs at least 4 bins with matching intensities");
    }
    for (std::size_t i = 0; i < d.times.size(); ++i) {
      if (!std::isfinite(d.times[i]) || !std::isfinite(d.intensity[i]) || d.intensity[i] < 0.0) {
        throw InvalidArgument("decay bins must be finite with non-negative intensity");
      }
    }
  }

  // Stage 1: global IRF width.
  std::size_t evals = 0;
  const auto total_chi2 = [&](double log_sigma) {
    double s = 0.0;
    for (const auto &d : decays) s += fit_trace(d, std::exp(log_sigma), opts.tau0, opts.tau1).chi2;
    ++evals;
    return s;
  };
  const auto width = opt::scan_then_brent(total_chi2, std::log(opts.sigma_initial / 25.0),
                                          std::log(opts.sigma_initial * 10.0), 40, 1e-10);
  const double sigma = std::exp(width.x);

  FitResult out;
  out.model = "spin_polarization";
  out.objective_kind = kResidualSum;
  out.parameters["sigma_irf"] = sigma;
  out.units["sigma_irf"] = "s";
  out.diagnostics["stage1_chi2"] = width.value;

  std::vector<double> t, p0, w;
  for (std::size_t k = 0; k < decays.size(); ++k) {
    const TraceFit f = fit_trace(decays[k], sigma, opts.tau0, opts.tau1);
    const double a0 = f.coef[0], a1 = f.coef[1], sum = a0 + a1;
    if (!(std::fabs(sum) > 0.0)) throw InvalidArgument("decay " + std::to_string(k) + " has no signal");
    const double p = a0 / sum;
    const Eigen::Vector2d grad(a1 / (sum * sum), -a0 / (sum * sum));
    const double var = grad.dot(f.cov.topLeftCorner<2, 2>() * grad);
    const std::string name = "p0_" + std::to_string(k);
    out.parameters[name] = p;
    out.standard_errors[name] = std::sqrt(std::max(var, 0.0));
    out.diagnostics["t_rabi_" + std::to_string(k)] = decays[k].t_rabi;
    t.push_back(decays[k].t_rabi);
    p0.push_back(p);
    w.push_back(1.0 / std::max(var, 1e-24));
  }

  // Stage 2: cosine in the Rabi duration, omega seeded from a grid scan.
  std::vector<double> ts = t;
  std::sort(ts.begin(), ts.end());
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < ts.size(); ++i) {
    if (ts[i] > ts[i - 1]) min_gap = std::min(min_gap, ts[i] - ts[i - 1]);
  }
  const double span = ts.back() - ts.front();
  if (!(span > 0.0)) throw InvalidArgument("polarization fit needs distinct Rabi durations");
  const double omega_lo = 0.25 * M_PI / span;
  const double omega_hi = M_PI / min_gap;

  CosineFit best{0, 0, std::numeric_limits<double>::infinity()};
  double best_omega = omega_lo;
  for (std::size_t i = 0; i < opts.omega_grid; ++i) {
    const double om = omega_lo + (omega_hi - omega_lo) * static_cast<double>(i) /
                                     static_cast<double>(opts.omega_grid - 1);
    const CosineFit f = cosine_at(t, p0, w, om);
    if (f.cost < best.cost) best = f, best_omega = om;
  }
  double sw = 0, swy = 0;
  for (std::size_t i = 0; i < t.size(); ++i) sw += w[i], swy += w[i] * p0[i];
  const double flat_c = swy / sw;
  double flat_cost = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) flat_cost += w[i] * (p0[i] - flat_c) * (p0[i] - flat_c);

  const double n_pts = static_cast<double>(t.size());
  auto constant_result = [&]() {
    out.parameters["a"] = 0.0;
    out.parameters["c"] = flat_c;
    out.parameters["p0_at_zero"] = flat_c;
    const double s2 = std::max(1.0, flat_cost / (n_pts - 1.0));
    out.standard_errors["c"] = std::sqrt(s2 / sw);
    out.standard_errors["p0_at_zero"] = out.standard_errors["c"];
    out.flags.insert("omega_unidentifiable");
    out.objective = flat_cost;
    out.converged = true;
    out.n_evals = evals;
    return out;
  };
  if (flat_cost <= 1e-20 * sw * std::max(flat_c * flat_c, 1e-12)) return constant_result();

  const double omega_scale = best_omega;
  const opt::Residuals residuals = [&](const Eigen::VectorXd &x) {
    Eigen::VectorXd r(static_cast<Eigen::Index>(t.size()));
    for (std::size_t i = 0; i < t.size(); ++i) {
      r[static_cast<Eigen::Index>(i)] =
          (x[0] * std::cos(x[1] * omega_scale * t[i]) + x[2] - p0[i]) * std::sqrt(w[i]);
    }
    return r;
  };
  Eigen::VectorXd x0(3);
  x0 << best.a, 1.0, best.c;
  auto fit = opt::levenberg_marquardt(residuals, x0);
  evals += fit.evaluations;

  const double dof = n_pts - 3.0;
  const double s2 = dof > 0 ? std::max(1.0, fit.cost / dof) : 1.0;
  Eigen::MatrixXd cov = opt::least_squares_covariance(fit, false);
  if (cov.size() == 0) return constant_result();
  cov *= s2;
  double a = fit.x[0], omega = fit.x[1] * omega_scale;
  const double c = fit.x[2];
  if (std::fabs(a) < 3.0 * std::sqrt(std::max(cov(0, 0), 0.0))) return constant_result();
  if (omega < 0.0) omega = -omega;

  out.parameters["a"] = a;
  out.parameters["omega"] = omega;
  out.parameters["c"] = c;
  out.parameters["p0_at_zero"] = a + c;
  out.units["omega"] = "rad/s";
  out.standard_errors["a"] = std::sqrt(cov(0, 0));
  out.standard_errors["omega"] = omega_scale * std::sqrt(cov(1, 1));
  out.standard_errors["c"] = std::sqrt(cov(2, 2));
  out.standard_errors["p0_at_zero"] = std::sqrt(std::max(cov(0, 0) + cov(2, 2) + 2.0 * cov(0, 2), 0.0));
  out.objective = fit.cost;
  out.converged = fit.converged;
  out.n_evals = evals;
  return out;
}

} // namespace scc::est
