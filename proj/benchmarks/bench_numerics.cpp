#include <random>

#include <benchmark/benchmark.h>

#include "xover/numerics.hpp"

namespace {

xover::SymMatrix random_symmetric(int n) {
  std::mt19937_64 rng(n);
  std::normal_distribution<double> z;
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) a(i, j) = a(j, i) = z(rng);
  return xover::SymMatrix(a);
}

void BM_Jacobi(benchmark::State& state) {
  const auto m = random_symmetric(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(xover::eigensym(m));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Jacobi)->RangeMultiplier(2)->Range(4, 64)->Complexity();

void BM_MoorePenrose(benchmark::State& state) {
  const auto m = random_symmetric(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(xover::moore_penrose(m));
}
BENCHMARK(BM_MoorePenrose)->Arg(8)->Arg(32);

}  // namespace
