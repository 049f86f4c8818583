#include <benchmark/benchmark.h>

#include "ncft/fourier.hpp"

namespace {

void BM_Forward(benchmark::State& state, const char* spec, const char* space) {
  const ncft::IrrepTable t = ncft::irreps_catalog(ncft::build_group(spec));
  ncft::Rng rng = ncft::make_rng(0, {});
  const auto f = ncft::GroupFunction::random(t.group, ncft::parse_space(space), rng);
  for (auto _ : state) benchmark::DoNotOptimize(ncft::forward(f, t));
}

void BM_Inverse(benchmark::State& state, const char* spec, const char* space) {
  const ncft::IrrepTable t = ncft::irreps_catalog(ncft::build_group(spec));
  ncft::Rng rng = ncft::make_rng(0, {});
  const auto a = ncft::SpectralArray::random(t, ncft::parse_space(space), rng);
  for (auto _ : state) benchmark::DoNotOptimize(ncft::inverse(a, t));
}

}  // namespace

BENCHMARK_CAPTURE(BM_Forward, S3_scalar, "S3", "scalar");
BENCHMARK_CAPTURE(BM_Forward, S4_schatten22, "S4", "schatten:2:2");
BENCHMARK_CAPTURE(BM_Inverse, S4_schatten22, "S4", "schatten:2:2");
