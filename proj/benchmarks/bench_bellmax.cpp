#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "bellmax/bellmax.hpp"

using namespace bellmax;

namespace {

LeafVector random_leaves(int depth) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> v(std::size_t{1} << depth);
  for (auto& x : v) x = unit(rng);
  return LeafVector(depth, std::move(v));
}

StepFunction staircase(int pieces) {
  std::vector<double> bp(pieces + 1), vals(pieces);
  for (int i = 0; i <= pieces; ++i) bp[i] = static_cast<double>(i) / pieces;
  for (int i = 0; i < pieces; ++i) vals[i] = static_cast<double>(pieces - i);
  return StepFunction(std::move(bp), std::move(vals));
}

}  // namespace

static void BM_DyadicMaximal(benchmark::State& state) {
  const auto phi = random_leaves(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dyadic_maximal(phi));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(phi.size()));
}
BENCHMARK(BM_DyadicMaximal)->DenseRange(10, 22, 4)->Unit(benchmark::kMicrosecond);

static void BM_MaximalRearranged(benchmark::State& state) {
  const auto phi = random_leaves(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(maximal_rearranged(phi));
}
BENCHMARK(BM_MaximalRearranged)->Arg(12)->Arg(16)->Unit(benchmark::kMicrosecond);

static void BM_OmegaQ(benchmark::State& state) {
  int i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(omega_q(2.5, i / 1000.0));
    i = i == 1000 ? 0 : i + 1;
  }
}
BENCHMARK(BM_OmegaQ);

static void BM_SolveAlpha(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(solve_alpha(1.5, 3.0, 7.0, 1.0));
}
BENCHMARK(BM_SolveAlpha);

static void BM_FunctionalStep(benchmark::State& state) {
  const auto g = staircase(static_cast<int>(state.range(0)));
  const FunctionalSpec spec{OuterFunction::max_power(1.5, 2.0), -0.25, 0.9};
  for (auto _ : state) benchmark::DoNotOptimize(functional(g, spec));
}
BENCHMARK(BM_FunctionalStep)->Arg(8)->Arg(64)->Arg(512)->Unit(benchmark::kMicrosecond);

static void BM_FunctionalAdaptive(benchmark::State& state) {
  const auto g = staircase(static_cast<int>(state.range(0)));
  const FunctionalSpec spec{OuterFunction::max_power(1.5, 2.0), -0.25, 0.9};
  FunctionalOptions opts;
  opts.policy = QuadraturePolicy::AdaptiveOnly;
  for (auto _ : state) benchmark::DoNotOptimize(functional(g, spec, std::nullopt, opts));
}
BENCHMARK(BM_FunctionalAdaptive)->Arg(8)->Arg(64)->Unit(benchmark::kMicrosecond);

static void BM_BellmanI5(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bellman_i5(2.0, 2.0, 1.0, 1.5));
}
BENCHMARK(BM_BellmanI5);

static void BM_BellmanThm2(benchmark::State& state) {
  const WeakConstraint w[] = {{1.5, 0.2}, {2.0, 1.0}, {5.0, 3.0}};
  const FunctionalSpec spec{OuterFunction::power(1.2), -0.3, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(bellman_thm2(w, 0.5, spec));
}
BENCHMARK(BM_BellmanThm2);

static void BM_BellmanThm3(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bellman_thm3(3.0, 1.5, 2.5, 2.0, 1.0, 5.0));
}
BENCHMARK(BM_BellmanThm3);

static void BM_BellmanThm3Integral(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bellman_thm3_integral(3.0, 1.5, 2.5, 2.0, 1.0, 5.0));
}
BENCHMARK(BM_BellmanThm3Integral);

static void BM_BellmanThm4(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bellman_thm4(2.0, 3.0, 4.0, 1.0));
}
BENCHMARK(BM_BellmanThm4);

static void BM_Symmetrization(benchmark::State& state) {
  const StepFunction g({0.0, 0.3, 1.0}, {3.0, 1.0});
  const FunctionalSpec spec{OuterFunction::power(2.0), 0.0, 1.0};
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_symmetrization({g, 1.0, N}, spec));
}
BENCHMARK(BM_Symmetrization)->Arg(16)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
