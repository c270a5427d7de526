#include "fixtures.hpp"

#include <algorithm>
#include <cmath>

#include "scc/readout/optimize_readout.hpp"

namespace fixtures {

double gaussian(scc::Rng &rng) {
  const double u1 = 1.0 - rng.uniform();
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.141592653589793 * u2);
}

scc::est::EchoModel published_echo() { return {0.844, 0.143, 1.72, 201e-6, 36.48e-6, 7.47e-6}; }

std::vector<scc::est::EchoPoint> echo_points(const scc::est::EchoModel &m, double noise,
                                             std::uint64_t seed) {
  scc::Rng rng(seed);
  std::vector<scc::est::EchoPoint> out;
  for (int i = 0; i <= 300; ++i) {
    const double tau = i * 1e-6;
    out.push_back({tau, m(tau) + (noise > 0 ? noise * gaussian(rng) : 0.0)});
  }
  return out;
}

std::vector<scc::est::DecayTrace> polarization_decays(const PolarizationTruth &t,
                                                      bool poisson_noise, std::uint64_t seed) {
  scc::Rng rng(seed);
  std::vector<scc::est::DecayTrace> out;
  const double bin = 0.5e-9;
  for (int k = 0; k < 12; ++k) {
    scc::est::DecayTrace d;
    d.t_rabi = k * 20e-9;
    const double p0 = t.a * std::cos(t.omega * d.t_rabi) + t.c;
    for (double time = -5e-9; time <= 120e-9 + 1e-15; time += bin) {
      const double mean = scc::est::decay_model(time, t.sigma, t.tau0, t.tau1,
                                                t.photons_per_trace * bin * p0,
                                                t.photons_per_trace * bin * (1.0 - p0),
                                                t.background_per_bin);
      d.times.push_back(time);
      d.intensity.push_back(poisson_noise ? static_cast<double>(rng.poisson(mean)) : mean);
    }
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<scc::est::NoisePoint> noise_points(double a, double b, double rel_noise,
                                               std::uint64_t seed) {
  scc::Rng rng(seed);
  std::vector<scc::est::NoisePoint> out;
  const scc::est::NoiseCurve curve{a, b};
  for (int i = 0; i < 16; ++i) {
    const double t = 1e-6 * std::pow(5000.0, i / 15.0);
    const double s = curve(t) * (1.0 + rel_noise * gaussian(rng));
    out.push_back({t, s});
  }
  return out;
}

std::vector<scc::est::SaturationPoint> saturation_points(const scc::est::SaturationModel &law,
                                                         const std::vector<double> &powers,
                                                         double rel_err, bool noisy,
                                                         std::uint64_t seed) {
  scc::Rng rng(seed);
  std::vector<scc::est::SaturationPoint> out;
  for (const double p : powers) {
    const double y = law(p);
    const double err = rel_err * y;
    out.push_back({p, noisy ? y + err * gaussian(rng) : y, err});
  }
  return out;
}

std::vector<RegimeCase> published_regimes() {
  const auto laws = scc::readout::RateLaws::published();
  std::vector<RegimeCase> out;
  out.push_back({0.875, laws.at(0.875), 8e-3});
  for (const double p : {2.0, 5.0}) {
    const auto r = laws.at(p);
    out.push_back({p, r, 2.0 / r.g1});
  }
  return out;
}

double total_variation(const std::vector<double> &pmf, const std::vector<std::uint64_t> &counts) {
  double total = 0.0;
  for (const auto c : counts) total += static_cast<double>(c);
  const std::size_t top = std::max(pmf.size(), counts.size());
  double tv = 0.0;
  for (std::size_t n = 0; n < top; ++n) {
    const double p = n < pmf.size() ? pmf[n] : 0.0;
    const double q = n < counts.size() ? static_cast<double>(counts[n]) / total : 0.0;
    tv += std::fabs(p - q);
  }
  return 0.5 * tv;
}

} // namespace fixtures
