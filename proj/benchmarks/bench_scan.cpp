#include <benchmark/benchmark.h>

#include "sba/scan.hpp"

namespace {

void BM_generate_random_sb(benchmark::State& state) {
  sba::GenLimits limits;
  sba::Rng root(42);
  uint64_t i = 0;
  for (auto _ : state) {
    sba::Rng rng = root.split(i++);
    benchmark::DoNotOptimize(sba::generate_random_sb(rng, limits));
  }
}
BENCHMARK(BM_generate_random_sb);

void BM_theorem_scan(benchmark::State& state) {
  sba::ScanConfig cfg;
  cfg.trials = (int)state.range(0);
  cfg.max_string_len = 6;
  for (auto _ : state) benchmark::DoNotOptimize(sba::theorem_scan(cfg));
}
BENCHMARK(BM_theorem_scan)->Arg(5)->Arg(20);

}  // namespace

BENCHMARK_MAIN();
