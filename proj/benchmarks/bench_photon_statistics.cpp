#include <benchmark/benchmark.h>

#include "scc/ctmc/photon_statistics.hpp"
#include "scc/readout/optimize_readout.hpp"
#include "scc/readout/policy.hpp"

namespace {

const scc::ctmc::RateSet kRates = scc::readout::RateLaws::published().at(2.0);

void BM_PmfAnalytic(benchmark::State &state) {
  const double t_R = static_cast<double>(state.range(0)) * 1e-6;
  for (auto _ : state) {
    benchmark::DoNotOptimize(scc::ctmc::pmf_analytic(kRates, t_R, scc::ctmc::ChargeState::NVminus));
  }
}
BENCHMARK(BM_PmfAnalytic)->Arg(10)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_ConditionalPmfs(benchmark::State &state) {
  const double t_R = 1e-3;
  const auto n_max = scc::ctmc::default_n_max(kRates, t_R);
  for (auto _ : state) {
    benchmark::DoNotOptimize(scc::ctmc::conditional_pmfs(kRates, t_R, n_max, 1e-10));
  }
}
BENCHMARK(BM_ConditionalPmfs)->Unit(benchmark::kMicrosecond);

void BM_ChargeFidelity(benchmark::State &state) {
  const scc::readout::ReadoutPolicy policy{100e-6, 2, {}};
  for (auto _ : state) benchmark::DoNotOptimize(scc::readout::charge_fidelity(kRates, policy));
}
BENCHMARK(BM_ChargeFidelity)->Unit(benchmark::kMicrosecond);

} // namespace
