#include <benchmark/benchmark.h>

#include "dumbwaiter/chain.hpp"
#include "dumbwaiter/fleet.hpp"
#include "dumbwaiter/optimize.hpp"
#include "dumbwaiter/spatial.hpp"

namespace ch = dumbwaiter::chain;
namespace sp = dumbwaiter::spatial;

namespace {

ch::ChainSpec uniform_spec(int n) {
  return {n, std::vector<double>(static_cast<std::size_t>(n), 0.1), ch::MovementPolicy::uniform(n)};
}

void BM_GenerateCalls(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sp::generate_calls(n, 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GenerateCalls)->Arg(1 << 10)->Arg(1 << 20);

void BM_EmpiricalMoments(benchmark::State& state) {
  const auto legs = sp::leg_series(sp::generate_calls(static_cast<std::size_t>(state.range(0)), 1));
  for (auto _ : state) benchmark::DoNotOptimize(sp::empirical_leg_moments(legs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EmpiricalMoments)->Arg(1 << 20);

void BM_BuildMatrix(benchmark::State& state) {
  const auto spec = uniform_spec(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ch::build_transition_matrix(spec));
}
BENCHMARK(BM_BuildMatrix)->DenseRange(3, 9, 3);

void BM_Objective(benchmark::State& state) {
  const auto m = ch::build_transition_matrix(uniform_spec(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(ch::objective(m));
}
BENCHMARK(BM_Objective)->DenseRange(3, 9, 3)->Unit(benchmark::kMillisecond);

void BM_MonteCarloObjective(benchmark::State& state) {
  const auto m = ch::build_transition_matrix(uniform_spec(3));
  for (auto _ : state) benchmark::DoNotOptimize(ch::monte_carlo_objective(m, 10'000, 1));
}
BENCHMARK(BM_MonteCarloObjective)->Unit(benchmark::kMillisecond);

void BM_Optimize(benchmark::State& state) {
  const auto spec = uniform_spec(3);
  dumbwaiter::optimize::GAConfig ga;
  ga.generations = 20;
  for (auto _ : state) benchmark::DoNotOptimize(dumbwaiter::optimize::optimize_policy(spec, ga));
}
BENCHMARK(BM_Optimize)->Unit(benchmark::kMillisecond);

void BM_Fleet(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(dumbwaiter::fleet::fleet_simulation({8, 10, 80}, 100'000, 1));
  }
}
BENCHMARK(BM_Fleet)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
