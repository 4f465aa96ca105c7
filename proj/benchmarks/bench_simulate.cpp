#include <benchmark/benchmark.h>

#include "xover/constructors.hpp"
#include "xover/simulate.hpp"

namespace {

void BM_Simulate(benchmark::State& state) {
  const auto d = xover::williams_pair(5);
  const xover::DropoutModel model{1, {0.3}};
  xover::SimulationOptions opts;
  opts.replicates = 1000;
  opts.threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(xover::simulate(d, model, opts));
  state.SetItemsProcessed(state.iterations() * opts.replicates);
}
BENCHMARK(BM_Simulate)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_Enumerate(benchmark::State& state) {
  const auto d = xover::williams_pair(5);
  for (auto _ : state) benchmark::DoNotOptimize(xover::enumerate(d));
}
BENCHMARK(BM_Enumerate)->Unit(benchmark::kMillisecond);

}  // namespace
