#include <benchmark/benchmark.h>

#include "scc/ctmc/telegraph.hpp"
#include "scc/readout/optimize_readout.hpp"

namespace {

void BM_SampleWindows(benchmark::State &state) {
  const auto rates = scc::readout::RateLaws::published().at(2.0);
  const auto windows = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(scc::ctmc::sample_windows(rates, 1e-3, 0.75, windows, 1, 1));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleWindows)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);

} // namespace
