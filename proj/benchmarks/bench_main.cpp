// Microbenchmarks: night-loop runs and forcing-profile synthesis across
// market sizes. Instances are seeded per iteration index so repeated runs
// measure the same work.

#include <benchmark/benchmark.h>

#include "matching/divorces.hpp"
#include "matching/engine.hpp"
#include "matching/generators.hpp"
#include "matching/manipulation.hpp"

namespace {

using namespace matching;

void BM_run_men(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const RandomInstance ri = gen_random(n, n, 42, false);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run(ri.instance, Side::Men));
  }
  state.SetComplexityN(static_cast<std::int64_t>(n));
}
BENCHMARK(BM_run_men)->Arg(16)->Arg(64)->Arg(128)->Arg(256)->Complexity();

void BM_manipulate_general(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    state.PauseTiming();
    const RandomInstance ri = gen_random(n, n, ++seed, false);
    state.ResumeTiming();
    benchmark::DoNotOptimize(manipulate_general(ri.instance, ri.mu));
  }
  state.SetComplexityN(static_cast<std::int64_t>(n));
}
BENCHMARK(BM_manipulate_general)->Arg(16)->Arg(64)->Arg(128)->Arg(256)->Complexity();

void BM_manipulate_flat(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    state.PauseTiming();
    const RandomInstance ri = gen_random(n, n, ++seed, true);
    state.ResumeTiming();
    benchmark::DoNotOptimize(manipulate_flat(ri.instance, ri.mu));
  }
  state.SetComplexityN(static_cast<std::int64_t>(n));
}
BENCHMARK(BM_manipulate_flat)->Arg(16)->Arg(64)->Arg(128)->Arg(256)->Complexity();

void BM_one_divorce(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const DivorceTightInstance g = gen_divorce_tight(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(one_divorce_strategy(g.instance, g.mu));
  }
  state.SetComplexityN(static_cast<std::int64_t>(n));
}
BENCHMARK(BM_one_divorce)->Arg(8)->Arg(16)->Arg(32)->Complexity();

}  // namespace

BENCHMARK_MAIN();
