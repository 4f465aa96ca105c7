#include <benchmark/benchmark.h>

#include "xover/constructors.hpp"
#include "xover/information.hpp"
#include "xover/metrics.hpp"

namespace {

xover::CrossoverDesign design_for(int t) {
  return t % 2 ? xover::williams_pair(t) : xover::williams_square(t);
}

void BM_ProjectionMinimal(benchmark::State& state) {
  const auto d = design_for(static_cast<int>(state.range(0)));
  const auto pattern = xover::DropoutPattern::truncated(d, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(xover::direct_info(xover::joint_info_projection(d, pattern)));
  }
}
BENCHMARK(BM_ProjectionMinimal)->DenseRange(4, 10, 2)->Arg(5)->Arg(9);

void BM_OrthogonalMinimal(benchmark::State& state) {
  const auto d = xover::truncate(design_for(static_cast<int>(state.range(0))), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(xover::direct_info(xover::joint_info_orthogonal(d)));
  }
}
BENCHMARK(BM_OrthogonalMinimal)->DenseRange(4, 10, 2);

void BM_ClosedFormMinimal(benchmark::State& state) {
  const auto d = design_for(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(xover::minimal_closed_form(d, 1));
}
BENCHMARK(BM_ClosedFormMinimal)->DenseRange(4, 10, 2);

void BM_MaxLossExtreme(benchmark::State& state) {
  const auto d = xover::extreme_design(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(xover::max_loss(d, 1));
}
BENCHMARK(BM_MaxLossExtreme)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace
