#include "scc/estimators/spin_echo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "scc/errors.hpp"
#include "scc/optimize.hpp"

namespace scc::est {
namespace {

constexpr int kRevivals = 10;
constexpr std::array<const char *, 6> kNames = {"A", "B", "n", "T2", "T_rev", "T_dec"};

double revival_train(double tau, double t_rev, double t_dec) {
  double s = 0.0;
  for (int j = 0; j < kRevivals; ++j) {
    const double z = (tau - j * t_rev) / t_dec;
    s += std::exp(-z * z);
  }
  return s;
}

// Internal vector: A, B, log n, log(T2/scale), log(T_rev/scale), log(T_dec/scale).
EchoModel unpack(const Eigen::VectorXd &x, double scale) {
  return {x[0], x[1], std::exp(x[2]), scale * std::exp(x[3]), scale * std::exp(x[4]),
          scale * std::exp(x[5])};
}

// Least-squares (A, B) for a fixed shape g(tau); returns the cost.
double linear_ab(const std::vector<EchoPoint> &pts, const std::vector<double> &g, double &a,
                 double &b) {
  const auto m = static_cast<double>(pts.size());
  double sg = 0, sgg = 0, sy = 0, sgy = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    sg += g[i];
    sgg += g[i] * g[i];
    sy += pts[i].signal;
    sgy += g[i] * pts[i].signal;
  }
  const double det = m * sgg - sg * sg;
  if (std::fabs(det) < 1e-300) {
    a = sy / m;
    b = 0.0;
  } else {
    b = (m * sgy - sg * sy) / det;
    a = (sy - b * sg) / m;
  }
  double cost = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double r = a + b * g[i] - pts[i].signal;
    cost += r * r;
  }
  return cost;
}

} // namespace

double EchoModel::operator()(double tau) const noexcept {
  return A + B * std::exp(-std::pow(tau / T2, n)) * revival_train(tau, T_rev, T_dec);
}

FitResult fit_spin_echo(const std::vector<EchoPoint> &points, const EchoFitOptions &opts) {
  if (points.size() < 12) throw InvalidArgument("spin-echo fit needs at least 12 points");
  for (const auto &p : points) {
    if (!std::isfinite(p.tau) || p.tau < 0.0 || !std::isfinite(p.signal)) {
      throw InvalidArgument("spin-echo fit: points must be finite with tau >= 0");
    }
  }
  std::vector<double> taus;
  for (const auto &p : points) taus.push_back(p.tau);
  std::sort(taus.begin(), taus.end());
  const double scale = taus.back();
  if (!(scale > 0.0)) throw InvalidArgument("spin-echo fit: all delays are zero");
  std::vector<double> gaps;
  for (std::size_t i = 1; i < taus.size(); ++i) {
    if (taus[i] > taus[i - 1]) gaps.push_back(taus[i] - taus[i - 1]);
  }
  std::nth_element(gaps.begin(), gaps.begin() + static_cast<long>(gaps.size() / 2), gaps.end());
  const double spacing = gaps.empty() ? scale / 10.0 : gaps[gaps.size() / 2];

  const auto m = static_cast<double>(points.size());
  const double mean =
      std::accumulate(points.begin(), points.end(), 0.0,
                      [](double s, const EchoPoint &p) { return s + p.signal; }) / m;
  double flat_cost = 0.0;
  for (const auto &p : points) flat_cost += (p.signal - mean) * (p.signal - mean);

  FitResult out;
  out.model = "spin_echo";
  out.objective_kind = kResidualSum;
  auto flat_result = [&](std::size_t evals) {
    out.parameters = {{"A", mean}, {"B", 0.0}};
    out.standard_errors = {{"A", m > 1 ? std::sqrt(flat_cost / (m - 1.0) / m) : 0.0}};
    out.units.clear();
    out.objective = flat_cost;
    out.converged = true;
    out.n_evals = evals;
    out.flags.insert("envelope_unidentifiable");
    return out;
  };
  if (flat_cost <= 1e-24 * std::max(1.0, mean * mean) * m) return flat_result(0);

  // Profile scan over (T_rev, T_dec) with A, B solved linearly and no decay;
  // the lowest local minima seed the joint fits.
  struct Seed {
    double cost, t_rev, t_dec, a, b;
  };
  std::vector<Seed> scan;
  const std::size_t grid = 600;
  const double lo = std::max(2.0 * spacing, scale * 1e-3);
  const std::array<double, 3> ratios = {0.08, 0.2, 0.35};
  std::vector<double> g(points.size());
  std::size_t evals = 0;
  for (const double ratio : ratios) {
    std::vector<Seed> row;
    for (std::size_t k = 0; k < grid; ++k) {
      const double t_rev = lo + (scale - lo) * static_cast<double>(k) / (grid - 1);
      for (std::size_t i = 0; i < points.size(); ++i) {
        g[i] = revival_train(points[i].tau, t_rev, ratio * t_rev);
      }
      Seed s{0, t_rev, ratio * t_rev, 0, 0};
      s.cost = linear_ab(points, g, s.a, s.b);
      row.push_back(s);
      ++evals;
    }
    for (std::size_t k = 0; k < grid; ++k) {
      const bool left = k == 0 || row[k].cost <= row[k - 1].cost;
      const bool right = k + 1 == grid || row[k].cost <= row[k + 1].cost;
      if (left && right) scan.push_back(row[k]);
    }
  }
  std::sort(scan.begin(), scan.end(), [](const Seed &x, const Seed &y) { return x.cost < y.cost; });
  if (scan.size() > opts.revival_starts) scan.resize(opts.revival_starts);

  const opt::Residuals residuals = [&](const Eigen::VectorXd &x) {
    const EchoModel model = unpack(x, scale);
    Eigen::VectorXd r(static_cast<Eigen::Index>(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i) {
      r[static_cast<Eigen::Index>(i)] = model(points[i].tau) - points[i].signal;
    }
    return r;
  };

  opt::LeastSquaresOptions coarse;
  coarse.max_iterations = 60;
  coarse.cost_tol = 1e-10;
  opt::LeastSquaresResult best;
  best.cost = std::numeric_limits<double>::infinity();
  for (const auto &s : scan) {
    Eigen::VectorXd x0(6);
    x0 << s.a, s.b, std::log(2.0), 0.0, std::log(s.t_rev / scale), std::log(s.t_dec / scale);
    try {
      auto r = opt::levenberg_marquardt(residuals, x0, coarse);
      evals += r.evaluations;
      if (r.cost < best.cost) best = std::move(r);
    } catch (const InvalidArgument &) {
      continue;
    }
  }
  if (!std::isfinite(best.cost)) return flat_result(evals);

  opt::LeastSquaresOptions fine;
  fine.max_iterations = opts.max_iterations;
  auto fit = opt::levenberg_marquardt(residuals, best.x, fine);
  evals += fit.evaluations;
  if (fit.cost > best.cost) fit = best;

  const EchoModel model = unpack(fit.x, scale);
  const Eigen::MatrixXd cov = opt::least_squares_covariance(fit, true);
  const bool no_envelope =
      cov.size() == 0 ? true : std::fabs(model.B) < 3.0 * std::sqrt(std::max(cov(1, 1), 0.0));
  if (no_envelope && fit.cost >= 0.5 * flat_cost) return flat_result(evals);

  const std::array<double, 6> values = {model.A, model.B, model.n, model.T2, model.T_rev,
                                        model.T_dec};
  for (int i = 0; i < 6; ++i) out.parameters[kNames[i]] = values[i];
  for (const char *t : {"T2", "T_rev", "T_dec"}) out.units[t] = "s";
  if (cov.size() != 0) {
    for (int i = 0; i < 6; ++i) {
      const double sd = std::sqrt(std::max(cov(i, i), 0.0));
      out.standard_errors[kNames[i]] = i < 2 ? sd : values[i] * sd;
    }
  } else {
    out.flags.insert("singular_covariance");
  }
  out.objective = fit.cost;
  out.converged = fit.converged;
  out.n_evals = evals;
  out.diagnostics["flat_residual_sum"] = flat_cost;
  return out;
}

EchoModel echo_model_from(const FitResult &fit) {
  EchoModel m;
  m.A = fit.at("A");
  m.B = fit.at("B");
  if (m.B == 0.0 && fit.has_flag("envelope_unidentifiable")) return m;
  m.n = fit.at("n");
  m.T2 = fit.at("T2");
  m.T_rev = fit.at("T_rev");
  m.T_dec = fit.at("T_dec");
  return m;
}

} // namespace scc::est
