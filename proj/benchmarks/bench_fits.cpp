#include <benchmark/benchmark.h>

#include "scc/ctmc/charge.hpp"
#include "scc/ctmc/telegraph.hpp"
#include "scc/estimators/rate_fit.hpp"
#include "scc/readout/optimize_readout.hpp"

namespace {

scc::est::CountHistogram histogram(double power_uW, double t_R) {
  const auto rates = scc::readout::RateLaws::published().at(power_uW);
  const auto s = scc::ctmc::sample_windows(rates, t_R, scc::ctmc::steady_state(rates).p_minus, 100000, 11);
  return scc::est::CountHistogram::from_counts(s.counts, t_R);
}

void BM_FitRatesMle(benchmark::State &state) {
  const auto h = histogram(2.0, 1e-3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(scc::est::fit_rates_mle(h, scc::est::InitialMixture::stationary()));
  }
}
BENCHMARK(BM_FitRatesMle)->Unit(benchmark::kMillisecond);

void BM_FitChargeMixture(benchmark::State &state) {
  const auto rates = scc::readout::RateLaws::published().at(2.0);
  const auto h = histogram(2.0, 1e-3);
  for (auto _ : state) benchmark::DoNotOptimize(scc::est::fit_charge_mixture(h, rates));
}
BENCHMARK(BM_FitChargeMixture)->Unit(benchmark::kMillisecond);

void BM_OptimizePolicy(benchmark::State &state) {
  const auto laws = scc::readout::RateLaws::published();
  for (auto _ : state) benchmark::DoNotOptimize(scc::readout::optimize_policy(laws, 2.0, 2));
}
BENCHMARK(BM_OptimizePolicy)->Unit(benchmark::kMillisecond);

} // namespace
