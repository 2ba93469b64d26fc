// Serial reference vs OpenMP sweep over the same grid.

#include <benchmark/benchmark.h>

#include "exhand/sweep.hpp"

namespace {

exhand::SweepConfig grid() {
  exhand::SweepConfig c;
  c.frequencies = {90, 500, 2000};
  c.k_grid = {1000, 5000, 20000};
  c.b_grid = {0, 20};
  c.drop.n_falls = 2;
  return c;
}

void BM_SweepSerial(benchmark::State& state) {
  const auto c = grid();
  for (auto _ : state) benchmark::DoNotOptimize(exhand::run_sweep(c));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.cell_count()));
}

void BM_SweepParallel(benchmark::State& state) {
  const auto c = grid();
  for (auto _ : state) benchmark::DoNotOptimize(exhand::run_sweep_parallel(c));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.cell_count()));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SweepParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
