#include <benchmark/benchmark.h>

#include "ncft/repr.hpp"

namespace {

void BM_IrrepsCatalog(benchmark::State& state, const char* spec) {
  const ncft::FiniteGroup g = ncft::build_group(spec);
  for (auto _ : state) benchmark::DoNotOptimize(ncft::irreps_catalog(g));
}

void BM_IrrepsNumeric(benchmark::State& state, const char* spec) {
  const ncft::FiniteGroup g = ncft::build_group(spec);
  for (auto _ : state) benchmark::DoNotOptimize(ncft::irreps_numeric(g, 0));
}

void BM_Validate(benchmark::State& state, const char* spec) {
  const ncft::IrrepTable t = ncft::irreps_catalog(ncft::build_group(spec));
  for (auto _ : state) benchmark::DoNotOptimize(ncft::validate_irreps(t));
}

}  // namespace

BENCHMARK_CAPTURE(BM_IrrepsCatalog, S4, "S4");
BENCHMARK_CAPTURE(BM_IrrepsNumeric, D6, "D6");
BENCHMARK_CAPTURE(BM_IrrepsNumeric, S4, "S4");
BENCHMARK_CAPTURE(BM_IrrepsNumeric, S5, "S5")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Validate, S4, "S4");
