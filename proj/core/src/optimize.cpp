#include "scc/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "scc/errors.hpp"

namespace scc::opt {
namespace {

struct Vertex {
  std::vector<double> x;
  double f;
};

double safe_eval(const Objective &f, const std::vector<double> &x) {
  const double v = f(x);
  return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
}

// One Nelder-Mead descent from x0; returns when converged or out of budget.
MinimizeResult nelder_mead_once(const Objective &f, const std::vector<double> &x0,
                                const std::vector<double> &step,
                                const NelderMeadOptions &opts, std::size_t budget) {
  const std::size_t n = x0.size();
  std::vector<Vertex> simplex;
  simplex.reserve(n + 1);
  std::size_t evals = 0;
  simplex.push_back({x0, safe_eval(f, x0)});
  ++evals;
  for (std::size_t i = 0; i < n; ++i) {
    auto x = x0;
    x[i] += (step[i] != 0.0) ? step[i] : 1e-3;
    simplex.push_back({x, safe_eval(f, x)});
    ++evals;
  }

  bool converged = false;
  std::vector<double> centroid(n), trial(n);
  // One iteration costs at most n + 2 evaluations (reflect, expand or
  // contract, then a shrink of n vertices).
  while (evals + n + 2 <= budget) {
    std::sort(simplex.begin(), simplex.end(),
              [](const Vertex &l, const Vertex &r) { return l.f < r.f; });

    const double best = simplex.front().f;
    const double worst = simplex.back().f;
    double diameter = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        diameter = std::max(diameter, std::fabs(simplex[k].x[i] - simplex[0].x[i]));
      }
    }
    if (std::isfinite(best) &&
        worst - best <= opts.f_tol_abs + opts.f_tol_rel * std::fabs(best) &&
        diameter <= opts.x_tol) {
      converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[k].x[i];
    }
    for (auto &c : centroid) c /= static_cast<double>(n);

    auto point = [&](double coeff) {
      for (std::size_t i = 0; i < n; ++i) {
        trial[i] = centroid[i] + coeff * (simplex.back().x[i] - centroid[i]);
      }
      ++evals;
      return safe_eval(f, trial);
    };

    const double fr = point(-1.0);
    auto reflected = trial;
    if (fr < simplex.front().f) {
      const double fe = point(-2.0);
      if (fe < fr) {
        simplex.back() = {trial, fe};
      } else {
        simplex.back() = {reflected, fr};
      }
      continue;
    }
    if (fr < simplex[n - 1].f) {
      simplex.back() = {reflected, fr};
      continue;
    }
    // Contraction: outside if the reflection beat the worst vertex, else inside.
    const bool outside = fr < simplex.back().f;
    const double fc = point(outside ? -0.5 : 0.5);
    if (fc < (outside ? fr : simplex.back().f)) {
      simplex.back() = {trial, fc};
      continue;
    }
    for (std::size_t k = 1; k <= n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        simplex[k].x[i] = simplex[0].x[i] + 0.5 * (simplex[k].x[i] - simplex[0].x[i]);
      }
      simplex[k].f = safe_eval(f, simplex[k].x);
      ++evals;
    }
  }

  const auto best = std::min_element(
      simplex.begin(), simplex.end(),
      [](const Vertex &l, const Vertex &r) { return l.f < r.f; });
  return {best->x, best->f, evals, converged};
}

} // namespace

MinimizeResult nelder_mead(const Objective &f, std::vector<double> x0,
                           const std::vector<double> &step,
                           const NelderMeadOptions &opts) {
  if (step.size() != x0.size()) throw InvalidArgument("nelder_mead: step size mismatch");
  if (opts.max_evals < x0.size() + 1) {
    throw InvalidArgument("nelder_mead: budget smaller than the initial simplex");
  }
  MinimizeResult result = nelder_mead_once(f, x0, step, opts, opts.max_evals);
  for (std::size_t r = 0; r < opts.max_restarts && result.converged; ++r) {
    if (result.evaluations + 2 * (x0.size() + 1) > opts.max_evals) break;
    MinimizeResult again = nelder_mead_once(f, result.x, step, opts,
                                            opts.max_evals - result.evaluations);
    const double gain = result.value - again.value;
    const std::size_t used = result.evaluations + again.evaluations;
    if (again.value <= result.value) {
      result.x = std::move(again.x);
      result.value = again.value;
    }
    result.evaluations = used;
    result.converged = again.converged;
    if (gain <= opts.f_tol_abs + opts.f_tol_rel * std::fabs(result.value)) break;
  }
  return result;
}

ScalarResult brent_minimize(const std::function<double(double)> &f, double lo,
                            double hi, double x_tol, std::size_t max_evals) {
  if (!(hi > lo)) throw InvalidArgument("brent_minimize: empty bracket");
  constexpr double kGolden = 0.3819660112501051;
  double a = lo, b = hi;
  double x = a + kGolden * (b - a);
  double w = x, v = x;
  double fx = f(x);
  double fw = fx, fv = fx;
  double d = 0.0, e = 0.0;
  std::size_t evals = 1;

  while (evals < max_evals) {
    const double m = 0.5 * (a + b);
    const double tol1 = x_tol * (std::fabs(x) + 1.0);
    const double tol2 = 2.0 * tol1;
    if (std::fabs(x - m) <= tol2 - 0.5 * (b - a)) break;

    bool golden = true;
    if (std::fabs(e) > tol1) {
      double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::fabs(q);
      const double etemp = e;
      e = d;
      if (std::fabs(p) < std::fabs(0.5 * q * etemp) && p > q * (a - x) &&
          p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = (m > x) ? tol1 : -tol1;
        golden = false;
      }
    }
    if (golden) {
      e = (x >= m) ? a - x : b - x;
      d = kGolden * e;
    }
    const double u = (std::fabs(d) >= tol1) ? x + d : x + (d > 0 ? tol1 : -tol1);
    const double fu = f(u);
    ++evals;
    if (fu <= fx) {
      if (u >= x) a = x; else b = x;
      v = w; fv = fw;
      w = x; fw = fx;
      x = u; fx = fu;
    } else {
      if (u < x) a = u; else b = u;
      if (fu <= fw || w == x) {
        v = w; fv = fw;
        w = u; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }
  return {x, fx, evals};
}

ScalarResult scan_then_brent(const std::function<double(double)> &f, double lo,
                             double hi, std::size_t grid, double x_tol) {
  if (!(hi > lo)) throw InvalidArgument("scan_then_brent: empty bracket");
  grid = std::max<std::size_t>(grid, 3);
  std::vector<double> xs(grid), fs(grid);
  std::size_t best = 0;
  for (std::size_t i = 0; i < grid; ++i) {
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid - 1);
    fs[i] = f(xs[i]);
    if (fs[i] < fs[best]) best = i;
  }
  const double a = xs[best == 0 ? 0 : best - 1];
  const double b = xs[best + 1 == grid ? grid - 1 : best + 1];
  ScalarResult inner = brent_minimize(f, a, b, x_tol);
  inner.evaluations += grid;
  if (fs[best] < inner.value) {
    inner.x = xs[best];
    inner.value = fs[best];
  }
  return inner;
}

Eigen::MatrixXd numerical_jacobian(const Residuals &r, const Eigen::VectorXd &x,
                                   double rel_step, std::size_t *evaluations) {
  Eigen::VectorXd xp = x;
  Eigen::MatrixXd jac;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double h = rel_step * std::max(std::fabs(x[i]), 1.0);
    xp[i] = x[i] + h;
    const Eigen::VectorXd up = r(xp);
    xp[i] = x[i] - h;
    const Eigen::VectorXd down = r(xp);
    xp[i] = x[i];
    if (i == 0) jac.resize(up.size(), x.size());
    jac.col(i) = (up - down) / (2.0 * h);
  }
  if (evaluations) *evaluations += 2 * static_cast<std::size_t>(x.size());
  return jac;
}

LeastSquaresResult levenberg_marquardt(const Residuals &r, Eigen::VectorXd x0,
                                       const LeastSquaresOptions &opts) {
  LeastSquaresResult out;
  out.x = std::move(x0);
  out.residuals = r(out.x);
  out.evaluations = 1;
  out.cost = out.residuals.squaredNorm();
  if (!std::isfinite(out.cost)) throw InvalidArgument("least squares: non-finite initial residuals");

  double lambda = 1e-3;
  const Eigen::Index n = out.x.size();
  for (std::size_t iter = 0; iter < opts.max_iterations; ++iter) {
    out.jacobian = numerical_jacobian(r, out.x, opts.fd_step, &out.evaluations);
    const Eigen::MatrixXd jtj = out.jacobian.transpose() * out.jacobian;
    const Eigen::VectorXd grad = out.jacobian.transpose() * out.residuals;
    if (grad.lpNorm<Eigen::Infinity>() <= opts.grad_tol * std::max(1.0, out.cost) ||
        out.cost <= 1e-30) {
      out.converged = true;
      return out;
    }

    bool improved = false;
    for (int attempt = 0; attempt < 40; ++attempt) {
      Eigen::MatrixXd a = jtj;
      for (Eigen::Index i = 0; i < n; ++i) a(i, i) += lambda * std::max(jtj(i, i), 1e-300);
      const Eigen::VectorXd delta = a.ldlt().solve(-grad);
      if (!delta.allFinite()) {
        lambda *= 10.0;
        continue;
      }
      const Eigen::VectorXd trial = out.x + delta;
      const Eigen::VectorXd res = r(trial);
      ++out.evaluations;
      const double cost = res.allFinite() ? res.squaredNorm()
                                          : std::numeric_limits<double>::infinity();
      if (cost < out.cost) {
        const double drop = out.cost - cost;
        const bool small_step =
            delta.norm() <= opts.step_tol * (out.x.norm() + opts.step_tol);
        out.x = trial;
        out.residuals = res;
        const double previous = out.cost;
        out.cost = cost;
        lambda = std::max(lambda / 10.0, 1e-12);
        improved = true;
        if (small_step || drop <= opts.cost_tol * previous) {
          out.jacobian = numerical_jacobian(r, out.x, opts.fd_step, &out.evaluations);
          out.converged = true;
          return out;
        }
        break;
      }
      lambda *= 10.0;
      if (lambda > 1e16) break;
    }
    if (!improved) {
      // No descent direction left at working precision: a minimum.
      out.converged = true;
      return out;
    }
  }
  out.jacobian = numerical_jacobian(r, out.x, opts.fd_step, &out.evaluations);
  return out;
}

Eigen::MatrixXd numerical_hessian(const Objective &f, const std::vector<double> &x,
                                  const std::vector<double> &step,
                                  std::size_t *evaluations) {
  const std::size_t n = x.size();
  Eigen::MatrixXd h(n, n);
  const double f0 = f(x);
  std::size_t evals = 1;
  auto at = [&](std::size_t i, double di, std::size_t j, double dj) {
    auto y = x;
    y[i] += di;
    y[j] += dj;
    ++evals;
    return f(y);
  };
  for (std::size_t i = 0; i < n; ++i) {
    const double hi = step[i];
    h(i, i) = (at(i, hi, i, 0.0) - 2.0 * f0 + at(i, -hi, i, 0.0)) / (hi * hi);
    for (std::size_t j = 0; j < i; ++j) {
      const double hj = step[j];
      const double v = (at(i, hi, j, hj) - at(i, hi, j, -hj) - at(i, -hi, j, hj) +
                        at(i, -hi, j, -hj)) /
                       (4.0 * hi * hj);
      h(i, j) = v;
      h(j, i) = v;
    }
  }
  if (evaluations) *evaluations += evals;
  return h;
}

Eigen::MatrixXd least_squares_covariance(const LeastSquaresResult &fit,
                                         bool scale_by_residual) {
  const Eigen::Index m = fit.residuals.size();
  const Eigen::Index n = fit.x.size();
  const Eigen::MatrixXd jtj = fit.jacobian.transpose() * fit.jacobian;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(jtj, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto &sv = svd.singularValues();
  if (sv.size() == 0 || !(sv(0) > 0.0) || sv(sv.size() - 1) < 1e-13 * sv(0)) {
    return {};
  }
  double s2 = 1.0;
  if (scale_by_residual) {
    s2 = (m > n) ? fit.cost / static_cast<double>(m - n) : 0.0;
  }
  Eigen::VectorXd inv = sv.cwiseInverse();
  return s2 * svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

} // namespace scc::opt
