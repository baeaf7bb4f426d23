#include <benchmark/benchmark.h>

#include <random>

#include "bucklab/bitmap.hpp"
#include "bucklab/periodic_set.hpp"
#include "convolution.hpp"

using namespace bucklab;
using S = EventuallyPeriodicSet;

namespace {

Bitmap random_bitmap(std::size_t size, int fill_percent, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pct(0, 99);
  Bitmap b(size);
  for (std::size_t i = 0; i < size; ++i) {
    if (pct(rng) < fill_percent) b.set(i);
  }
  return b;
}

S random_set(std::uint64_t q, std::uint64_t blocks, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pct(0, 99);
  std::vector<S::Value> residues, exceptions;
  for (std::uint64_t r = 0; r < q; ++r) {
    if (pct(rng) < 30) residues.push_back(r);
  }
  for (std::uint64_t e = 0; e < q * blocks; ++e) {
    if (pct(rng) < 30) exceptions.push_back(e);
  }
  return S::make(q, residues, q * blocks, exceptions);
}

}  // namespace

static void BM_ConvolveCounts(benchmark::State& state) {
  const auto size = static_cast<std::size_t>(state.range(0));
  const Bitmap a = random_bitmap(size, static_cast<int>(state.range(1)), 1);
  const Bitmap b = random_bitmap(size, static_cast<int>(state.range(1)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(detail::convolve_counts(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ConvolveCounts)->ArgsProduct({{1 << 10, 1 << 13, 1 << 16}, {5, 50}})->Complexity();

static void BM_ShiftedOr(benchmark::State& state) {
  const auto size = static_cast<std::size_t>(state.range(0));
  const Bitmap a = random_bitmap(size, static_cast<int>(state.range(1)), 1);
  const Bitmap b = random_bitmap(size, static_cast<int>(state.range(1)), 2);
  for (auto _ : state) {
    Bitmap out(2 * size);
    a.for_each_set([&](std::size_t x) { out.or_shifted(b, x); });
    benchmark::DoNotOptimize(out);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ShiftedOr)->ArgsProduct({{1 << 10, 1 << 13, 1 << 16}, {5, 50}})->Complexity();

static void BM_Sumset(benchmark::State& state) {
  const auto q = static_cast<std::uint64_t>(state.range(0));
  const S a = random_set(q, 3, 7);
  const S b = random_set(q + 1, 2, 8);
  for (auto _ : state) benchmark::DoNotOptimize(sumset(a, b));
}
BENCHMARK(BM_Sumset)->Arg(8)->Arg(64)->Arg(512);

static void BM_KFoldSumset(benchmark::State& state) {
  const S a = S::make(4, {1}, 4, {0, 1});
  for (auto _ : state) benchmark::DoNotOptimize(k_fold_sumset(a, static_cast<std::uint64_t>(state.range(0))));
}
BENCHMARK(BM_KFoldSumset)->Arg(2)->Arg(8)->Arg(32);
