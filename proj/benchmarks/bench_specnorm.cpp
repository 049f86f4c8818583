#include <benchmark/benchmark.h>

#include "ncft/specnorm.hpp"

namespace {

void BM_Schatten(benchmark::State& state) {
  ncft::Rng rng = ncft::make_rng(0, {});
  const ncft::Matrix x = ncft::gaussian_matrix(state.range(0), state.range(0), rng);
  for (auto _ : state) benchmark::DoNotOptimize(ncft::schatten_norm(x, ncft::Exponent(1.5)));
}

void BM_Sandwich(benchmark::State& state, double p, double q, bool quick) {
  ncft::Rng rng = ncft::make_rng(0, {});
  const ncft::Matrix x = ncft::gaussian_matrix(6, 6, rng);
  const ncft::SandwichOptions o = quick ? ncft::SandwichOptions::quick(0) : ncft::SandwichOptions{};
  for (auto _ : state)
    benchmark::DoNotOptimize(ncft::schatten_valued_norm(x, 2, 3, ncft::Exponent(p), ncft::Exponent(q), o));
}

}  // namespace

BENCHMARK(BM_Schatten)->Arg(4)->Arg(16)->Arg(64);
BENCHMARK_CAPTURE(BM_Sandwich, inf_type_quick, 1.0, 2.0, true)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Sandwich, inf_type_default, 1.0, 2.0, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Sandwich, sup_type_quick, 2.0, 1.0, true)->Unit(benchmark::kMillisecond);
