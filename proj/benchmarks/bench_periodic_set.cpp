#include <benchmark/benchmark.h>

#include "bucklab/periodic_set.hpp"
#include "bucklab/set_text.hpp"

using namespace bucklab;
using S = EventuallyPeriodicSet;

static void BM_MakeCanonical(benchmark::State& state) {
  // A set with period 12 written redundantly over modulus q and a long prefix.
  const auto q = static_cast<std::uint64_t>(state.range(0)) * 12;
  std::vector<S::Value> residues, exceptions;
  for (std::uint64_t r = 0; r < q; ++r) {
    if (r % 12 == 1 || r % 12 == 7) residues.push_back(r);
  }
  for (std::uint64_t e = 0; e < 4 * q; ++e) {
    if (e % 12 == 1 || e % 12 == 7) exceptions.push_back(e);
  }
  for (auto _ : state) benchmark::DoNotOptimize(S::make(q, residues, 4 * q, exceptions));
}
BENCHMARK(BM_MakeCanonical)->Arg(1)->Arg(16)->Arg(256);

static void BM_Intersect(benchmark::State& state) {
  const auto p = static_cast<std::uint64_t>(state.range(0));
  const S a = S::residue_classes(p, {0, 1});
  const S b = S::residue_classes(p + 1, {0, 2});
  for (auto _ : state) benchmark::DoNotOptimize(intersect(a, b));
}
BENCHMARK(BM_Intersect)->Arg(7)->Arg(63)->Arg(511);

static void BM_ParseRender(benchmark::State& state) {
  const std::string text = "{0,1,2,9} + mod 12 {1,5,7,11} from 24";
  for (auto _ : state) benchmark::DoNotOptimize(render_set(parse_set(text)));
}
BENCHMARK(BM_ParseRender);
