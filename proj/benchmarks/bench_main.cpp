#include <benchmark/benchmark.h>

#include "hermlab/catalog.hpp"
#include "hermlab/curvature.hpp"
#include "hermlab/flat_search.hpp"
#include "hermlab/random.hpp"

using namespace hermlab;

static void BM_Curvature(benchmark::State& state) {
  Rng rng(1);
  const auto u = random_structure(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(curvature(u, 0.5).frobenius);
}
BENCHMARK(BM_Curvature)->Arg(2)->Arg(3)->Arg(4);

static void BM_Validate(benchmark::State& state) {
  Rng rng(2);
  const auto u = random_structure(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(validate_structure(u).max_abs);
}
BENCHMARK(BM_Validate)->Arg(2)->Arg(3)->Arg(4);

static void BM_Jacobian(benchmark::State& state) {
  SearchProblem p;
  p.n = static_cast<int>(state.range(0));
  p.s = 0.7;
  const auto x = random_start(p, 3);
  for (auto _ : state) benchmark::DoNotOptimize(jacobian(x, p, false).norm());
}
BENCHMARK(BM_Jacobian)->Arg(2)->Arg(3);

static void BM_LevenbergMarquardt(benchmark::State& state) {
  SearchProblem p;
  p.n = 2;
  p.s = 2.0;
  p.hunt = true;
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(lm_minimize(p, random_start(p, seed++)).final_flatness);
}
BENCHMARK(BM_LevenbergMarquardt)->Unit(benchmark::kMillisecond);

static void BM_Multistart(benchmark::State& state) {
  SearchProblem p;
  p.n = 2;
  p.s = 1.0;
  p.restarts = 16;
  p.threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(multistart_search(p).summary.converged_kahler);
}
BENCHMARK(BM_Multistart)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
