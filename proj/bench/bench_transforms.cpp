#include <benchmark/benchmark.h>

#include <random>

#include "lgh/checks.hpp"
#include "lgh/io.hpp"

using namespace lgh;

namespace {

constexpr int kBenchCircleTrunc = 8;
constexpr int kBenchTwoEll = 6;

ProductGroup bench_group(int kind) {
  if (kind == 0) return {{GroupKind::Circle, kDefaultCircleTrunc}, {GroupKind::Circle, kDefaultCircleTrunc}};
  return {{GroupKind::Circle, kBenchCircleTrunc}, {GroupKind::SU2, kBenchTwoEll}};
}

void forward(benchmark::State& state, bool reference) {
  const ProductGroup group = bench_group(static_cast<int>(state.range(0)));
  const ProductTransform transform(default_grid(group), group, reference);
  std::mt19937_64 rng(5);
  const GridFunction f = transform.inverse(random_coefficients(group, rng));
  for (auto _ : state) benchmark::DoNotOptimize(transform.forward(f));
}

void inverse(benchmark::State& state, bool reference) {
  const ProductGroup group = bench_group(static_cast<int>(state.range(0)));
  const ProductTransform transform(default_grid(group), group, reference);
  std::mt19937_64 rng(6);
  const FourierTable table = random_coefficients(group, rng);
  for (auto _ : state) benchmark::DoNotOptimize(transform.inverse(table));
}

void BM_ForwardReference(benchmark::State& s) { forward(s, true); }
void BM_ForwardKernel(benchmark::State& s) { forward(s, false); }
void BM_InverseReference(benchmark::State& s) { inverse(s, true); }
void BM_InverseKernel(benchmark::State& s) { inverse(s, false); }

}  // namespace

// Argument 0: T2 at the default truncation, argument 1: T1 x S3 at (8, 6).
BENCHMARK(BM_ForwardReference)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ForwardKernel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_InverseReference)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_InverseKernel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
