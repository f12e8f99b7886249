#include <benchmark/benchmark.h>

#include "toral/quadratic_counting.hpp"
#include "toral/random.hpp"
#include "toral/regions.hpp"
#include "toral/restriction.hpp"
#include "toral/shell.hpp"

namespace {

void BM_EnumerateShell3(benchmark::State& state) {
  const std::int64_t m = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(toral::enumerate_shell(3, m));
}
BENCHMARK(BM_EnumerateShell3)->Arg(10001)->Arg(1000001)->Arg(10000001);

void BM_RestrictionKernel(benchmark::State& state) {
  const auto s = toral::enumerate_shell(3, state.range(0));
  toral::Rng rng(1);
  const auto e = toral::Eigenfunction::random(s, rng);
  const auto sub = toral::GeodesicSubmanifold::random(3, 2, rng);
  for (auto _ : state) benchmark::DoNotOptimize(toral::restriction_norm_sq(e, sub));
}
BENCHMARK(BM_RestrictionKernel)->Arg(25)->Arg(1001)->Arg(10001);

void BM_MaxCap2D(benchmark::State& state) {
  const std::int64_t m = state.range(0);
  const auto s = toral::enumerate_shell(2, m);
  for (auto _ : state) benchmark::DoNotOptimize(toral::max_cap_count(s, toral::default_cap_radius_sq(m)));
}
BENCHMARK(BM_MaxCap2D)->Arg(325)->Arg(5525)->Arg(1105 * 1105);

void BM_CircleCount(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(toral::embedded_circle_count({17, -3, 8, 1}, {-9, 14, 2, 5}, {4, 4, -19, 11}));
}
BENCHMARK(BM_CircleCount);

void BM_HilbertNorm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(toral::hilbert_truncated_norm({0.5, n}));
}
BENCHMARK(BM_HilbertNorm)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
