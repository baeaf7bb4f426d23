#include <benchmark/benchmark.h>

#include "bucklab/expansion.hpp"
#include "bucklab/interval_real.hpp"

using namespace bucklab;

static void BM_Expand(benchmark::State& state) {
  const IntervalReal alpha = IntervalReal::golden_conjugate();
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(expand(alpha, n, 8));
}
BENCHMARK(BM_Expand)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_FindQ(benchmark::State& state) {
  const IntervalReal alpha = IntervalReal::sqrt_of(Rational(2)).affine(Rational(Integer(1), Integer(2)), Rational(0));
  for (auto _ : state) benchmark::DoNotOptimize(find_q(alpha, Integer(1), static_cast<std::uint64_t>(state.range(0))));
}
BENCHMARK(BM_FindQ)->Arg(1)->Arg(3)->Arg(5);

static void BM_Enclosure(benchmark::State& state) {
  // Enclosures are memoized, so each iteration starts from a fresh stream.
  const auto level = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(IntervalReal::sqrt_of(Rational(3)).enclosure(level));
}
BENCHMARK(BM_Enclosure)->Arg(64)->Arg(512)->Arg(4096);
