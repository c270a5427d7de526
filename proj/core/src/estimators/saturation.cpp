#include "scc/estimators/saturation.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <Eigen/Dense>

#include "scc/errors.hpp"
#include "scc/optimize.hpp"

namespace scc::est {
namespace {

double shape(SaturationModel::Kind kind, double p, double p_sat) {
  const double num = kind == SaturationModel::Kind::quadratic_sat ? p * p : p;
  return num / (1.0 + p / p_sat);
}

struct Linear {
  double a;
  double dc;
  double cost;
};

// Weighted non-negative least squares for rate = a*h + dc (dc optional).
Linear solve_linear(const std::vector<SaturationPoint> &pts, SaturationModel::Kind kind,
                    double p_sat, bool dc_free, double dc_fixed) {
  double shh = 0, sh1 = 0, s11 = 0, shy = 0, s1y = 0;
  for (const auto &q : pts) {
    const double w = 1.0 / (q.error * q.error);
    const double h = shape(kind, q.power_uW, p_sat);
    const double y = q.rate - (dc_free ? 0.0 : dc_fixed);
    shh += w * h * h;
    sh1 += w * h;
    s11 += w;
    shy += w * h * y;
    s1y += w * y;
  }
  auto cost_of = [&](double a, double dc) {
    double c = 0.0;
    for (const auto &q : pts) {
      const double m = a * shape(kind, q.power_uW, p_sat) + (dc_free ? dc : dc_fixed);
      const double r = (m - q.rate) / q.error;
      c += r * r;
    }
    return c;
  };
  if (!dc_free) {
    const double a = std::max(0.0, shy / shh);
    return {a, dc_fixed, cost_of(a, dc_fixed)};
  }
  const double det = shh * s11 - sh1 * sh1;
  double a = (shy * s11 - sh1 * s1y) / det;
  double dc = (shh * s1y - sh1 * shy) / det;
  if (a >= 0.0 && dc >= 0.0 && std::isfinite(a) && std::isfinite(dc)) {
    return {a, dc, cost_of(a, dc)};
  }
  Linear best{std::max(0.0, shy / shh), 0.0, 0.0};
  best.cost = cost_of(best.a, 0.0);
  const double dc_only = std::max(0.0, s1y / s11);
  const double c2 = cost_of(0.0, dc_only);
  if (c2 < best.cost) best = {0.0, dc_only, c2};
  return best;
}

} // namespace

double SaturationModel::operator()(double power_uW) const noexcept {
  return a * shape(kind, power_uW, P_sat) + (kind == Kind::linear_sat ? dc : 0.0);
}

void SaturationModel::validate() const {
  if (!(a >= 0.0) || !(P_sat > 0.0) || !(dc >= 0.0) || !std::isfinite(a) ||
      !std::isfinite(P_sat) || !std::isfinite(dc)) {
    throw InvalidArgument("saturation law needs a >= 0, P_sat > 0, dc >= 0");
  }
}

std::string_view to_string(SaturationModel::Kind kind) noexcept {
  return kind == SaturationModel::Kind::linear_sat ? "linear_sat" : "quadratic_sat";
}

SaturationModel::Kind parse_saturation_kind(std::string_view text) {
  if (text == "linear_sat" || text == "linear") return SaturationModel::Kind::linear_sat;
  if (text == "quadratic_sat" || text == "quadratic") return SaturationModel::Kind::quadratic_sat;
  throw UnknownName("unknown saturation law '" + std::string(text) + "'");
}

FitResult fit_saturation(const std::vector<SaturationPoint> &points, SaturationModel::Kind kind,
                         const SaturationFitOptions &opts) {
  using Kind = SaturationModel::Kind;
  if (points.size() < 3) throw InvalidArgument("saturation fit needs at least 3 points");
  std::set<double> powers;
  for (const auto &q : points) {
    if (!(q.power_uW > 0.0) || !std::isfinite(q.power_uW)) {
      throw InvalidArgument("saturation fit: powers must be positive");
    }
    if (!(q.error > 0.0) || !std::isfinite(q.error) || !std::isfinite(q.rate)) {
      throw InvalidArgument("saturation fit: rates must be finite with positive errors");
    }
    powers.insert(q.power_uW);
  }
  if (opts.fixed_P_sat && !(*opts.fixed_P_sat > 0.0)) {
    throw InvalidArgument("fixed P_sat must be positive");
  }
  if (opts.fixed_dc && !(*opts.fixed_dc >= 0.0)) {
    throw InvalidArgument("fixed dc must be non-negative");
  }

  const bool dc_free = kind == Kind::linear_sat && !opts.fixed_dc;
  const double dc_fixed = kind == Kind::linear_sat ? opts.fixed_dc.value_or(0.0) : 0.0;
  const bool psat_free = !opts.fixed_P_sat;
  const std::size_t n_free = 1 + (dc_free ? 1 : 0) + (psat_free ? 1 : 0);
  if (powers.size() < n_free) {
    throw RankDeficient("saturation fit: " + std::to_string(powers.size()) +
                        " distinct powers cannot determine " + std::to_string(n_free) +
                        " parameters");
  }

  const double p_lo = *powers.begin(), p_hi = *powers.rbegin();
  std::size_t evals = 0;
  double p_sat = opts.fixed_P_sat.value_or(0.0);
  if (psat_free) {
    const auto profile = [&](double log_ps) {
      ++evals;
      return solve_linear(points, kind, std::exp(log_ps), dc_free, dc_fixed).cost;
    };
    const auto r = opt::scan_then_brent(profile, std::log(p_lo * 1e-2), std::log(p_hi * 1e3),
                                        80, 1e-12);
    p_sat = std::exp(r.x);
  }
  const Linear lin = solve_linear(points, kind, p_sat, dc_free, dc_fixed);

  // Joint refinement over (a, log P_sat, dc) restricted to the free ones.
  std::vector<int> which; // 0 = a, 1 = log P_sat, 2 = dc
  which.push_back(0);
  if (psat_free) which.push_back(1);
  if (dc_free) which.push_back(2);
  auto unpack = [&](const Eigen::VectorXd &x) {
    SaturationModel m{kind, lin.a, p_sat, dc_fixed};
    for (std::size_t i = 0; i < which.size(); ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      if (which[i] == 0) m.a = x[ii];
      if (which[i] == 1) m.P_sat = std::exp(x[ii]);
      if (which[i] == 2) m.dc = x[ii];
    }
    return m;
  };
  const opt::Residuals residuals = [&](const Eigen::VectorXd &x) {
    const SaturationModel m = unpack(x);
    Eigen::VectorXd r(static_cast<Eigen::Index>(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i) {
      r[static_cast<Eigen::Index>(i)] = (m(points[i].power_uW) - points[i].rate) / points[i].error;
    }
    return r;
  };
  Eigen::VectorXd x0(static_cast<Eigen::Index>(which.size()));
  for (std::size_t i = 0; i < which.size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    x0[ii] = which[i] == 0 ? lin.a : which[i] == 1 ? std::log(p_sat) : lin.dc;
  }
  auto fit = opt::levenberg_marquardt(residuals, x0);
  evals += fit.evaluations;
  SaturationModel model = unpack(fit.x);
  if (model.a < 0.0 || model.dc < 0.0 || fit.cost > lin.cost) {
    // Refinement left the feasible set or did not help: keep the profile solution.
    fit.x = x0;
    fit.residuals = residuals(x0);
    fit.cost = fit.residuals.squaredNorm();
    fit.jacobian = opt::numerical_jacobian(residuals, x0, 6e-6, &evals);
    model = unpack(x0);
  }

  FitResult out;
  out.model = std::string(to_string(kind));
  out.objective_kind = kResidualSum;
  out.objective = fit.cost;
  out.converged = fit.converged || fit.cost <= lin.cost;
  out.n_evals = evals;
  out.parameters["a"] = model.a;
  out.parameters["P_sat"] = model.P_sat;
  out.units["a"] = kind == Kind::linear_sat ? "cps/uW" : "cps/uW^2";
  out.units["P_sat"] = "uW";
  if (kind == Kind::linear_sat) {
    out.parameters["dc"] = model.dc;
    out.units["dc"] = "cps";
  }
  if (!psat_free) out.flags.insert("P_sat_fixed");
  if (kind == Kind::linear_sat && !dc_free) out.flags.insert("dc_fixed");
  if (psat_free && model.P_sat > p_hi * 1e2) out.flags.insert("P_sat_unbounded");
  if (model.a == 0.0 || (dc_free && model.dc == 0.0)) out.flags.insert("boundary");

  const Eigen::MatrixXd cov = opt::least_squares_covariance(fit, false);
  if (cov.size() == 0) throw RankDeficient("saturation fit: singular design at the solution");
  for (std::size_t i = 0; i < which.size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    const double sd = std::sqrt(std::max(cov(ii, ii), 0.0));
    if (which[i] == 0) out.standard_errors["a"] = sd;
    if (which[i] == 1) out.standard_errors["P_sat"] = model.P_sat * sd;
    if (which[i] == 2) out.standard_errors["dc"] = sd;
  }
  const auto dof = static_cast<double>(points.size() - which.size());
  out.diagnostics["reduced_chi2"] = dof > 0 ? fit.cost / dof : 0.0;
  return out;
}

SaturationModel saturation_from(const FitResult &fit) {
  SaturationModel m;
  m.kind = parse_saturation_kind(fit.model);
  m.a = fit.at("a");
  m.P_sat = fit.at("P_sat");
  if (m.kind == SaturationModel::Kind::linear_sat) m.dc = fit.at("dc");
  m.validate();
  return m;
}

} // namespace scc::est
