#include <benchmark/benchmark.h>

#include "slsq/constructors.hpp"
#include "slsq/optimizer.hpp"

namespace {

// Stage-2 throughput: items are proposed within-column moves.
void BM_Stage2(benchmark::State& state) {
  const int s = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  const auto start = slsq::trojan_square(slsq::cyclic_mols(s, k));
  slsq::SearchConfig c;
  c.stage2_moves = 100000;
  int restart = 0;
  for (auto _ : state) benchmark::DoNotOptimize(slsq::stage2_search(start, c, restart++).value);
  state.SetItemsProcessed(state.iterations() * *c.stage2_moves);
}
BENCHMARK(BM_Stage2)->Args({5, 3})->Args({5, 4})->Args({7, 6})->Unit(benchmark::kMillisecond);

// Stage-1 throughput: items are ejection-chain proposals.
void BM_Stage1(benchmark::State& state) {
  const int s = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  slsq::SearchConfig c;
  c.stage1_moves = 5000;
  c.stage1_target = 2.0;  // unreachable: run the full budget
  int restart = 0;
  for (auto _ : state) benchmark::DoNotOptimize(slsq::stage1_search({s, k, s}, c, restart++).value);
  state.SetItemsProcessed(state.iterations() * c.stage1_moves);
}
BENCHMARK(BM_Stage1)->Args({4, 4})->Args({5, 5})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
