#include "scc/estimators/rate_fit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "scc/ctmc/photon_statistics.hpp"
#include "scc/errors.hpp"
#include "scc/optimize.hpp"

namespace scc::est {
namespace {

constexpr double kPenalty = 1e300;
constexpr std::array<const char *, 4> kNames = {"g0", "g1", "gamma0", "gamma1"};

double mixture_log_likelihood(const CountHistogram &hist, const ctmc::ConditionalPmfs &c,
                              double p_minus) {
  double ll = 0.0;
  const auto &counts = hist.counts();
  for (std::size_t n = 0; n < counts.size(); ++n) {
    if (counts[n] == 0) continue;
    const double p = p_minus * c.from_minus[n] + (1.0 - p_minus) * c.from_zero[n];
    ll += static_cast<double>(counts[n]) * std::log(std::max(p, 1e-300));
  }
  return ll;
}

ctmc::RateSet from_log(const std::vector<double> &x) {
  return {std::exp(x[0]), std::exp(x[1]), std::exp(x[2]), std::exp(x[3])};
}

// Two-cluster split of the count distribution (1-D k-means on n, weighted by
// occurrences). Returns dim mean, bright mean and bright fraction.
struct Clusters {
  double low;
  double high;
  double w_high;
};

Clusters two_means(const CountHistogram &hist) {
  const auto &c = hist.counts();
  double cut = hist.mean();
  Clusters out{0.0, 0.0, 0.5};
  for (int iter = 0; iter < 50; ++iter) {
    double s_lo = 0, w_lo = 0, s_hi = 0, w_hi = 0;
    for (std::size_t n = 0; n < c.size(); ++n) {
      const auto w = static_cast<double>(c[n]);
      const auto x = static_cast<double>(n);
      if (x <= cut) {
        s_lo += w * x;
        w_lo += w;
      } else {
        s_hi += w * x;
        w_hi += w;
      }
    }
    if (w_lo == 0 || w_hi == 0) break;
    out = {s_lo / w_lo, s_hi / w_hi, w_hi / (w_lo + w_hi)};
    const double next = 0.5 * (out.low + out.high);
    if (next == cut) break;
    cut = next;
  }
  if (out.high <= out.low) {
    out = {0.5 * hist.mean(), 1.5 * hist.mean() + 1.0, 0.5};
  }
  return out;
}

// Rejects data whose sample variance is consistent with a single Poisson law.
// The standard error of the Fano factor under Poisson sampling is
// sqrt((1/m + 2) / N).
void check_identifiable(const CountHistogram &hist) {
  const double m = hist.mean();
  const double v = hist.variance();
  const auto n = static_cast<double>(hist.n_windows());
  if (m <= 0.0) throw NonIdentifiable("all windows recorded zero photons");
  const double se = std::sqrt((1.0 / m + 2.0) / n);
  if (v / m - 1.0 < 5.0 * se) {
    throw NonIdentifiable("count distribution is consistent with a single Poisson law "
                          "(Fano factor " + std::to_string(v / m) +
                          "); ionization and recapture rates are not identifiable");
  }
}

} // namespace

double InitialMixture::weight(const ctmc::RateSet &rates) const {
  if (steady_state) return ctmc::steady_state(rates).p_minus;
  return p_minus;
}

double log_likelihood(const CountHistogram &hist, const ctmc::RateSet &rates,
                      const InitialMixture &mixture, double pmf_tol) {
  const auto c = ctmc::conditional_pmfs(rates, hist.t_R(), hist.max_occupied(), pmf_tol);
  return mixture_log_likelihood(hist, c, mixture.weight(rates));
}

FitResult fit_rates_mle(const CountHistogram &hist, const InitialMixture &mixture,
                        const RateFitOptions &opts) {
  if (hist.empty()) throw InvalidArgument("histogram is empty");
  if (hist.occupied_bins() < 2) {
    throw InvalidArgument("rate fit needs at least two occupied bins");
  }
  if (!mixture.steady_state && !(mixture.p_minus >= 0.0 && mixture.p_minus <= 1.0)) {
    throw InvalidArgument("initial NV- weight must lie in [0, 1]");
  }
  check_identifiable(hist);

  const double t = hist.t_R();
  const auto n_top = static_cast<double>(hist.max_occupied());
  // Box on log-rates: photon rates up to a few times the largest count, charge
  // rates between 1e-6 and 1e4 jumps per window.
  const double log_g_lo = std::log(1e-6 / t), log_g_hi = std::log(1e4 / t);
  const double log_c_lo = std::log(1e-4 / t), log_c_hi = std::log((4.0 * n_top + 20.0) / t);

  std::size_t evals = 0;
  auto negative_ll = [&](const std::vector<double> &x, double tol) {
    ++evals;
    for (int i = 0; i < 4; ++i) {
      const bool charge = i < 2;
      const double lo = charge ? log_g_lo : log_c_lo;
      const double hi = charge ? log_g_hi : log_c_hi;
      if (!(x[i] >= lo && x[i] <= hi)) return kPenalty;
    }
    try {
      return -log_likelihood(hist, from_log(x), mixture, tol);
    } catch (const QuadratureFailure &) {
      return kPenalty;
    }
  };
  const opt::Objective objective = [&](const std::vector<double> &x) {
    return negative_ll(x, opts.pmf_tol);
  };

  // Start grid: photon rates from a two-cluster split of the counts; total
  // charge-jump number per window k = (g0 + g1) t in {0.3, 1, 3, 10}; NV-
  // residence fraction q = g0 / (g0 + g1) either the bright-cluster weight or 1/2.
  const Clusters cl = two_means(hist);
  const double gamma_dim = std::max(cl.low, 0.05) / t;
  const double gamma_bright = std::max(cl.high, cl.low + 1.0) / t;
  const double q_data = std::clamp(cl.w_high, 0.05, 0.95);
  const std::array<double, 4> jumps = {0.3, 1.0, 3.0, 10.0};
  const std::array<double, 2> fractions = {q_data, 0.5};

  std::vector<std::vector<double>> starts;
  for (const double q : fractions) {
    for (const double k : jumps) {
      starts.push_back({std::log(q * k / t), std::log((1.0 - q) * k / t),
                        std::log(gamma_dim), std::log(gamma_bright)});
    }
  }
  starts.resize(std::min(starts.size(), std::max<std::size_t>(opts.n_starts, 1)));

  const std::size_t hessian_cost = 1 + 2 * 4 + 4 * 6;
  if (opts.max_evals < hessian_cost + 50) {
    throw InvalidArgument("rate fit evaluation budget too small");
  }
  const std::size_t search_budget = opts.max_evals - hessian_cost;
  const std::size_t per_start =
      std::max<std::size_t>(40, search_budget / (3 * starts.size()));

  const std::vector<double> step = {0.7, 0.7, 0.2, 0.2};
  opt::MinimizeResult best;
  best.value = std::numeric_limits<double>::infinity();
  double initial_value = std::numeric_limits<double>::infinity();
  std::size_t best_start = 0;
  for (std::size_t s = 0; s < starts.size(); ++s) {
    if (evals + per_start + 1 > search_budget) break;
    const double f0 = objective(starts[s]);
    initial_value = std::min(initial_value, f0);
    opt::NelderMeadOptions coarse;
    coarse.max_evals = per_start;
    coarse.f_tol_abs = 1e-2;
    coarse.x_tol = 1e-3;
    coarse.max_restarts = 0;
    const auto r = opt::nelder_mead(objective, starts[s], step, coarse);
    if (r.value < best.value) {
      best = r;
      best_start = s;
    }
  }

  opt::NelderMeadOptions polish;
  polish.max_evals = search_budget > evals ? search_budget - evals : 0;
  polish.f_tol_abs = 1e-7;
  polish.f_tol_rel = 0.0;
  polish.x_tol = 1e-7;
  polish.max_restarts = 3;
  const std::vector<double> fine_step = {0.05, 0.05, 0.01, 0.01};
  auto polished = polish.max_evals > 10 ? opt::nelder_mead(objective, best.x, fine_step, polish)
                                        : best;
  if (polished.value > best.value) polished.x = best.x, polished.value = best.value;

  FitResult out;
  out.model = "telegraph_rates";
  out.objective_kind = kLogLikelihood;
  out.objective = -polished.value;
  out.converged = polished.converged && polished.value < kPenalty;
  const ctmc::RateSet fitted = from_log(polished.x);
  const std::array<double, 4> values = {fitted.g0, fitted.g1, fitted.gamma0, fitted.gamma1};
  for (int i = 0; i < 4; ++i) {
    out.parameters[kNames[i]] = values[i];
    out.units[kNames[i]] = "1/s";
  }

  // Observed information in log-rates, delta method back to rates.
  const opt::Objective precise = [&](const std::vector<double> &x) {
    return negative_ll(x, opts.hessian_pmf_tol);
  };
  const std::vector<double> h_step(4, 2e-3);
  std::size_t h_evals = 0;
  const Eigen::MatrixXd hess = opt::numerical_hessian(precise, polished.x, h_step, &h_evals);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(hess);
  if (eig.info() == Eigen::Success && eig.eigenvalues().minCoeff() > 0.0) {
    const Eigen::MatrixXd cov = eig.eigenvectors() *
                                eig.eigenvalues().cwiseInverse().asDiagonal() *
                                eig.eigenvectors().transpose();
    for (int i = 0; i < 4; ++i) {
      out.standard_errors[kNames[i]] = values[i] * std::sqrt(cov(i, i));
    }
  } else {
    out.flags.insert("information_not_positive_definite");
  }

  if (fitted.g1 * t < opts.weak_identification) out.flags.insert("weakly_identified");
  const double p_minus = mixture.weight(fitted);
  out.n_evals = evals;
  out.diagnostics["p_minus"] = p_minus;
  out.diagnostics["start_index"] = static_cast<double>(best_start);
  out.diagnostics["initial_log_likelihood"] = -initial_value;
  out.diagnostics["n_windows"] = static_cast<double>(hist.n_windows());
  out.diagnostics["t_R"] = t;
  const auto model = ctmc::pmf_mixture(fitted, t, p_minus, {opts.pmf_tol, hist.max_occupied() + 20});
  out.diagnostics["max_abs_pearson"] = pearson_residuals(hist, model.pmf).max_abs;
  return out;
}

ctmc::RateSet rates_from(const FitResult &fit) {
  return {fit.at("g0"), fit.at("g1"), fit.at("gamma0"), fit.at("gamma1")};
}

namespace {

struct MixtureDerivatives {
  double score;
  double curvature; ///< never positive
};

MixtureDerivatives mixture_derivatives(const CountHistogram &hist, const ctmc::ConditionalPmfs &c,
                                       double p) {
  MixtureDerivatives d{0.0, 0.0};
  const auto &counts = hist.counts();
  for (std::size_t n = 0; n < counts.size(); ++n) {
    if (counts[n] == 0) continue;
    const double diff = c.from_minus[n] - c.from_zero[n];
    const double q = std::max(p * c.from_minus[n] + (1.0 - p) * c.from_zero[n], 1e-300);
    const auto w = static_cast<double>(counts[n]);
    d.score += w * diff / q;
    d.curvature -= w * diff * diff / (q * q);
  }
  return d;
}

} // namespace

double charge_mixture_score(const CountHistogram &hist, const ctmc::RateSet &rates, double p_minus,
                            double pmf_tol) {
  const auto c = ctmc::conditional_pmfs(rates, hist.t_R(), hist.max_occupied(), pmf_tol);
  return mixture_derivatives(hist, c, p_minus).score;
}

FitResult fit_charge_mixture(const CountHistogram &hist, const ctmc::RateSet &rates,
                             double pmf_tol) {
  if (hist.empty()) throw InvalidArgument("histogram is empty");
  rates.validate();
  const auto c = ctmc::conditional_pmfs(rates, hist.t_R(), hist.max_occupied(), pmf_tol);

  std::size_t evals = 2;
  double p = 0.0;
  bool boundary = false;
  if (mixture_derivatives(hist, c, 0.0).score <= 0.0) {
    p = 0.0;
    boundary = true;
  } else if (mixture_derivatives(hist, c, 1.0).score >= 0.0) {
    p = 1.0;
    boundary = true;
  } else {
    // Safeguarded Newton on the score; the log-likelihood is concave in p.
    double lo = 0.0, hi = 1.0;
    p = 0.5;
    for (int iter = 0; iter < 200; ++iter) {
      const auto d = mixture_derivatives(hist, c, p);
      ++evals;
      if (d.score > 0) lo = p; else hi = p;
      double next = d.curvature < 0.0 ? p - d.score / d.curvature : 0.5 * (lo + hi);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      const bool done = std::fabs(next - p) < 1e-14 || hi - lo < 1e-14;
      p = next;
      if (done) break;
    }
  }

  FitResult out;
  out.model = "charge_mixture";
  out.objective_kind = kLogLikelihood;
  out.objective = mixture_log_likelihood(hist, c, p);
  out.converged = true;
  out.n_evals = evals;
  out.parameters["p_minus"] = p;
  const double info = -mixture_derivatives(hist, c, p).curvature;
  if (info > 0.0) out.standard_errors["p_minus"] = 1.0 / std::sqrt(info);
  if (boundary) out.flags.insert("boundary");
  std::vector<double> model(c.from_minus.size());
  for (std::size_t n = 0; n < model.size(); ++n) {
    model[n] = p * c.from_minus[n] + (1.0 - p) * c.from_zero[n];
  }
  out.diagnostics["max_abs_pearson"] = pearson_residuals(hist, model).max_abs;
  return out;
}

} // namespace scc::est
