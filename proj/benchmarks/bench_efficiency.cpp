#include <benchmark/benchmark.h>

#include "slsq/constructors.hpp"
#include "slsq/design.hpp"
#include "slsq/efficiency.hpp"

namespace {

slsq::Layout trojan(int s, int k) { return slsq::rotate_last_column(slsq::trojan_square(slsq::cyclic_mols(s, k))); }

void BM_Evaluate(benchmark::State& state) {
  const auto l = trojan(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(slsq::evaluate(l));
  state.SetLabel("v=" + std::to_string(l.params().v()));
}
BENCHMARK(BM_Evaluate)->Args({3, 2})->Args({5, 3})->Args({5, 4})->Args({7, 6});

// Cholesky/trace objective used inside the searches.
void BM_FastRowcol(benchmark::State& state) {
  const auto l = trojan(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(slsq::average_rowcol_efficiency(l));
}
BENCHMARK(BM_FastRowcol)->Args({3, 2})->Args({5, 3})->Args({5, 4})->Args({7, 6});

void BM_EigenRowcol(benchmark::State& state) {
  const auto l = trojan(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(slsq::canonical_efficiency_factors(slsq::rowcol_information(l)).average);
  }
}
BENCHMARK(BM_EigenRowcol)->Args({3, 2})->Args({5, 3})->Args({5, 4})->Args({7, 6});

void BM_Parse(benchmark::State& state) {
  const std::string text = slsq::serialize_layout(trojan(7, 6));
  for (auto _ : state) benchmark::DoNotOptimize(slsq::parse_layout(text));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_Parse);

}  // namespace
