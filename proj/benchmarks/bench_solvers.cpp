#include <benchmark/benchmark.h>

#include "gbp/exact.hpp"
#include "gbp/generate.hpp"
#include "gbp/heuristics.hpp"
#include "gbp/scheme.hpp"

namespace {

gbp::Instance uniform_instance(int n, int groups, std::uint64_t seed) {
  gbp::GenSpec spec;
  spec.family = gbp::Family::Uniform;
  spec.n_items = n;
  spec.n_groups = groups;
  spec.seed = seed;
  return gbp::generate(spec);
}

void BM_BalancedColoring(benchmark::State& state) {
  gbp::Instance inst = uniform_instance(static_cast<int>(state.range(0)),
                                        static_cast<int>(state.range(0)) / 4, 7);
  for (auto _ : state) benchmark::DoNotOptimize(gbp::balanced_coloring(inst).total_bins());
}
BENCHMARK(BM_BalancedColoring)->Arg(50)->Arg(200)->Arg(800);

void BM_FirstFitDecreasing(benchmark::State& state) {
  gbp::Instance inst = uniform_instance(static_cast<int>(state.range(0)),
                                        static_cast<int>(state.range(0)) / 4, 7);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        gbp::first_fit_conflicts(inst, gbp::ItemOrder::Decreasing).total_bins());
}
BENCHMARK(BM_FirstFitDecreasing)->Arg(50)->Arg(200)->Arg(800);

void BM_ExactSolver(benchmark::State& state) {
  gbp::Instance inst = uniform_instance(static_cast<int>(state.range(0)), 4, 11);
  gbp::SolveLimits limits;
  limits.max_items = 20;
  for (auto _ : state) benchmark::DoNotOptimize(gbp::solve_exact(inst, limits).opt);
}
BENCHMARK(BM_ExactSolver)->Arg(10)->Arg(14);

void BM_Aptas(benchmark::State& state) {
  gbp::Instance inst = uniform_instance(static_cast<int>(state.range(0)),
                                        static_cast<int>(state.range(0)) / 3, 3);
  gbp::Budgets budgets;
  budgets.force_pipeline = true;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        gbp::run_aptas(inst, gbp::Rational(2, 5), budgets).first.total_bins());
}
BENCHMARK(BM_Aptas)->Arg(12)->Arg(24);

void BM_GapDemo(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(
        gbp::demonstrate_gap(gbp::Rational(1, 5), static_cast<int>(state.range(0)))
            .greedy.total_bins());
}
BENCHMARK(BM_GapDemo)->Arg(10)->Arg(50);

}  // namespace

BENCHMARK_MAIN();
