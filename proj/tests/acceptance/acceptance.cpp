// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.
//   scc_acceptance            10 MLE replications per regime
//   scc_acceptance --full     100 replications

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "scc/ctmc/photon_statistics.hpp"
#include "scc/ctmc/telegraph.hpp"
#include "scc/estimators/noise_curve.hpp"
#include "scc/estimators/polarization.hpp"
#include "scc/estimators/rate_fit.hpp"
#include "scc/estimators/saturation.hpp"
#include "scc/estimators/spin_echo.hpp"
#include "scc/io/serialize.hpp"
#include "scc/magnetometry/sensitivity.hpp"
#include "scc/random.hpp"
#include "scc/readout/noise.hpp"
#include "scc/readout/optimize_readout.hpp"

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string &what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [miss]");
  }
};

std::string fmt(const char *f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

Outcome scc_noise_claim() {
  Outcome o;
  const double s = scc::readout::scc_noise(0.162, 0.504);
  o.check(std::fabs(s - 2.76) <= 0.01, "sigma_R = " + fmt("%.4f", s) + " (2.76 +- 0.01)");
  return o;
}

Outcome conventional_noise_claim() {
  Outcome o;
  const double s = scc::readout::conventional_noise(0.238, 0.154);
  o.check(std::fabs(s - 10.6) <= 0.05, "sigma_R = " + fmt("%.4f", s) + " (10.6 +- 0.05)");
  return o;
}

// Rate set k: rates drawn from Rng(kPmfSeed + k), window t_R = 50 / max(gamma).
constexpr std::uint64_t kPmfSeed = 7000;

scc::ctmc::RateSet random_rates(std::uint64_t k, double &t_R) {
  scc::Rng rng(kPmfSeed + k);
  const scc::ctmc::RateSet r{std::pow(10.0, 1 + 2.5 * rng.uniform()),
                             std::pow(10.0, 1 + 2.5 * rng.uniform()),
                             std::pow(10.0, 3 + 1.5 * rng.uniform()),
                             std::pow(10.0, 4 + 1.5 * rng.uniform())};
  t_R = 50.0 / std::max(r.gamma0, r.gamma1);
  return r;
}

Outcome pmf_vs_monte_carlo() {
  Outcome o;
  for (std::uint64_t k = 0; k < 5; ++k) {
    double t_R = 0.0;
    const auto r = random_rates(k, t_R);
    const auto pmf = scc::ctmc::pmf_analytic(r, t_R, scc::ctmc::ChargeState::NVminus);
    const auto mc = scc::ctmc::sample_windows(r, t_R, 1.0, 1'000'000, kPmfSeed + 100 + k);
    const double tv = fixtures::total_variation(pmf.pmf, mc.counts);
    o.check(tv < 0.01, "TV" + std::to_string(k) + " = " + fmt("%.4f", tv));
  }
  return o;
}

Outcome mle_recovery(int replications) {
  Outcome o;
  const char *names[] = {"g0", "g1", "gamma0", "gamma1"};
  for (const auto &c : fixtures::published_regimes()) {
    const double truth[] = {c.rates.g0, c.rates.g1, c.rates.gamma0, c.rates.gamma1};
    const double p = scc::ctmc::steady_state(c.rates).p_minus;
    int covered = 0;
    for (int k = 0; k < replications; ++k) {
      const auto s = scc::ctmc::sample_windows(c.rates, c.t_R, p, 100000, 1000 + k);
      const auto h = scc::est::CountHistogram::from_counts(s.counts, c.t_R);
      const auto fit = scc::est::fit_rates_mle(h, scc::est::InitialMixture::stationary());
      bool all = fit.converged;
      for (int i = 0; i < 4; ++i) {
        const auto se = fit.error(names[i]);
        all = all && se && std::fabs(fit.at(names[i]) - truth[i]) <= 3.0 * *se;
      }
      covered += all;
    }
    const double frac = static_cast<double>(covered) / replications;
    o.check(frac >= 0.95, fmt("%g uW: ", c.power_uW) + std::to_string(covered) + "/" +
                              std::to_string(replications));
  }
  return o;
}

Outcome fidelity_claims() {
  Outcome o;
  const std::vector<double> grid{1e-5, 1e-3, 3e-3, 1e-2};
  const auto env = scc::readout::fidelity_envelope(scc::readout::RateLaws::published(), grid,
                                                   0.875, 14.5, {1, 2, 3});
  o.check(env[0].fidelity_env >= 0.85 && env[0].fidelity_env <= 0.95,
          "F_C(10 us) = " + fmt("%.4f", env[0].fidelity_env) + fmt(" at %.3g uW", env[0].env_power_uW));
  for (std::size_t i = 1; i < env.size(); ++i) {
    o.check(env[i].fidelity_env >= 0.94,
            "F_C(<= " + fmt("%g s", grid[i]) + ") = " + fmt("%.4f", env[i].fidelity_env) +
                fmt(" at %.3g us", env[i].env_t_R * 1e6));
  }
  return o;
}

Outcome sensitivity_claims() {
  Outcome o;
  scc::mag::SensitivityBudget b;
  b.noise_curve = scc::est::NoiseCurve{7.54, 0.146};
  b.t_I = 6.5e-6;
  b.tau = 200e-6;
  const auto a = scc::mag::optimize_sensitivity(b);
  o.check(std::fabs(a.eta - 4e-9) <= 0.15 * 4e-9,
          "eta(200 us) = " + fmt("%.3f nT/rtHz", a.eta * 1e9) + fmt(" at t_R %.3g us", a.t_R * 1e6));
  b.tau = 2e-3;
  const auto c = scc::mag::optimize_sensitivity(b);
  o.check(std::fabs(c.eta - 900e-12) <= 0.15 * 900e-12,
          "eta(2 ms) = " + fmt("%.0f pT/rtHz", c.eta * 1e12) + fmt(" at t_R %.3g us", c.t_R * 1e6));
  return o;
}

Outcome property_suite() {
  Outcome o;

  bool noise_ok = true;
  for (int i = 0; i < 100; ++i) {
    for (int j = 0; j < 100; ++j) {
      if (i == j) continue;
      noise_ok = noise_ok && scc::readout::scc_noise(i / 99.0, j / 99.0) >= 1.0;
    }
  }
  o.check(noise_ok, "sigma_R >= 1 on 100x100 grid");

  // Normalization over the readout-optimization sweep: every (P, n) optimum.
  const auto laws = scc::readout::RateLaws::published();
  std::vector<double> powers;
  for (int i = 0; i < 8; ++i) powers.push_back(0.875 * std::pow(14.5 / 0.875, i / 7.0));
  const auto table = scc::readout::optimize_readout(laws, powers, {1, 2, 3});
  double worst_excess = -1.0;
  for (const auto &row : table.rows) {
    const auto r = laws.at(row.power_uW);
    for (auto s : {scc::ctmc::ChargeState::NVminus, scc::ctmc::ChargeState::NVzero}) {
      const auto pmf = scc::ctmc::pmf_analytic(r, row.t_R, s);
      worst_excess = std::max(worst_excess, std::fabs(1.0 - pmf.total()) - pmf.norm_tolerance);
    }
  }
  o.check(worst_excess <= 0.0,
          "norm deficit within bound (" + std::to_string(2 * table.rows.size()) + " pmfs)");

  const double tol = 1e-8;
  double worst_exchange = 0.0;
  for (std::uint64_t k = 0; k < 5; ++k) {
    double t_R = 0.0;
    const auto r = random_rates(k, t_R);
    // NV0 start from the joint quadrature pass vs the exchanged NV- computation.
    const auto swapped = scc::ctmc::pmf_analytic(r.exchanged(), t_R,
                                                 scc::ctmc::ChargeState::NVminus, {tol, {}, 4000});
    const auto joint = scc::ctmc::conditional_pmfs(r, t_R, swapped.n_max(), tol);
    for (std::size_t i = 0; i < joint.from_zero.size(); ++i) {
      worst_exchange = std::max(worst_exchange, std::fabs(joint.from_zero[i] - swapped[i]));
    }
  }
  o.check(worst_exchange <= 10 * tol, "exchange symmetry " + fmt("%.1e", worst_exchange));

  scc::Rng rng(4711);
  const scc::mag::PhysicalConstants pc;
  int points = 0;
  double worst_rel = 0.0;
  while (points < 100) {
    const auto pops = scc::readout::SCCPopulations::assigned(rng.uniform(), rng.uniform());
    const double tau = 1e-6 + 2e-3 * rng.uniform();
    const double scale = 1.0 / (pc.phase_rate() * tau);
    const double B = std::numbers::pi * scale * rng.uniform();
    const double slope = scc::mag::echo_slope(B, tau, pops);
    const double peak = std::fabs(pops.beta0_tilde - pops.beta1_tilde) / scale;
    if (peak < 0.05 / scale || std::fabs(slope) < 0.05 * peak) continue;
    const double h = 1e-5 * scale;
    const double fd =
        (scc::mag::echo_signal(B + h, tau, pops) - scc::mag::echo_signal(B - h, tau, pops)) / (2 * h);
    worst_rel = std::max(worst_rel, std::fabs(fd - slope) / std::fabs(slope));
    ++points;
  }
  o.check(worst_rel <= 1e-6, "echo slope vs FD " + fmt("%.1e", worst_rel));

  const scc::ctmc::RateSet r = laws.at(0.875);
  const auto first = scc::ctmc::sample_windows(r, 8e-3, 0.2, 20000, 99, 1);
  const auto second = scc::ctmc::sample_windows(r, 8e-3, 0.2, 20000, 99, 0);
  const auto text_a = scc::io::histogram_to_csv(scc::est::CountHistogram::from_counts(first.counts, 8e-3));
  const auto text_b = scc::io::histogram_to_csv(scc::est::CountHistogram::from_counts(second.counts, 8e-3));
  o.check(text_a == text_b && first.ended_in_minus == second.ended_in_minus,
          "reruns byte-identical");
  return o;
}

bool near_rel(double x, double truth, double rel) { return std::fabs(x - truth) <= rel * std::fabs(truth); }
bool within(const scc::est::FitResult &f, const std::string &name, double truth) {
  const auto se = f.error(name);
  return se && std::fabs(f.at(name) - truth) <= 3.0 * *se;
}

Outcome fit_fixtures() {
  Outcome o;
  const double rel = 1e-6;

  const auto echo = fixtures::published_echo();
  const auto e0 = scc::est::fit_spin_echo(fixtures::echo_points(echo, 0.0, 1));
  o.check(near_rel(e0.at("A"), echo.A, rel) && near_rel(e0.at("B"), echo.B, rel) &&
              near_rel(e0.at("n"), echo.n, rel) && near_rel(e0.at("T2"), echo.T2, rel) &&
              near_rel(e0.at("T_rev"), echo.T_rev, rel) && near_rel(e0.at("T_dec"), echo.T_dec, rel),
          "echo exact");
  const auto e1 = scc::est::fit_spin_echo(fixtures::echo_points(echo, 0.01, 2));
  o.check(within(e1, "T2", echo.T2), "echo 1% noise T2 = " + fmt("%.1f us", e1.at("T2") * 1e6));

  const fixtures::PolarizationTruth pol;
  const auto p0 = scc::est::fit_polarization(fixtures::polarization_decays(pol, false, 1));
  o.check(near_rel(p0.at("a"), pol.a, rel) && near_rel(p0.at("c"), pol.c, rel) &&
              near_rel(p0.at("p0_at_zero"), 0.92, rel),
          "polarization exact p0(0) = " + fmt("%.6f", p0.at("p0_at_zero")));
  const auto p1 = scc::est::fit_polarization(fixtures::polarization_decays(pol, true, 2));
  o.check(within(p1, "p0_at_zero", pol.a + pol.c),
          "polarization Poisson p0(0) = " + fmt("%.4f", p1.at("p0_at_zero")));

  const auto n0 = scc::est::fit_noise_curve(fixtures::noise_points(7.54, 0.146, 0.0, 1));
  o.check(near_rel(n0.at("a"), 7.54, rel) && near_rel(n0.at("b"), 0.146, rel), "noise curve exact");
  const auto n1 = scc::est::fit_noise_curve(fixtures::noise_points(7.54, 0.146, 0.03, 2));
  o.check(within(n1, "a", 7.54) && within(n1, "b", 0.146), "noise curve 3% noise");

  using Kind = scc::est::SaturationModel::Kind;
  const std::vector<double> powers{0.875, 1.5, 2, 3, 5, 8, 11, 14.5, 25, 50, 80};
  const scc::est::SaturationModel lin{Kind::linear_sat, 46200, 53.0, 268};
  const auto s0 = scc::est::fit_saturation(fixtures::saturation_points(lin, powers, 0.02, false, 1),
                                           Kind::linear_sat);
  o.check(near_rel(s0.at("a"), lin.a, rel) && near_rel(s0.at("P_sat"), lin.P_sat, rel) &&
              near_rel(s0.at("dc"), lin.dc, rel),
          "linear saturation exact");
  const scc::est::SaturationModel quad{Kind::quadratic_sat, 310, 53.2, 0};
  const auto s1 = scc::est::fit_saturation(fixtures::saturation_points(quad, powers, 0.05, true, 2),
                                           Kind::quadratic_sat);
  o.check(within(s1, "a", quad.a), "quadratic saturation 5% noise a = " + fmt("%.1f", s1.at("a")));
  return o;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Acceptance criteria runner"};
  bool full = false;
  int replications = 10;
  app.add_flag("--full", full, "100 MLE replications per regime");
  app.add_option("--replications", replications, "MLE replications per regime")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);
  if (full) replications = 100;

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"SCC readout noise from populations", scc_noise_claim},
      {"conventional readout noise from counts", conventional_noise_claim},
      {"analytic pmf vs Monte Carlo", pmf_vs_monte_carlo},
      {"MLE rate recovery", [&] { return mle_recovery(replications); }},
      {"charge readout fidelity envelope", fidelity_claims},
      {"magnetometer sensitivity", sensitivity_claims},
      {"property suite", property_suite},
      {"fit fixtures", fit_fixtures},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception &e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::printf("criterion %zu %s: %s | %s (%.1f s)\n", i + 1, o.pass ? "PASS" : "FAIL",
                criteria[i].first.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
