#include <benchmark/benchmark.h>

#include <numbers>

#include "rosc/analysis.hpp"
#include "rosc/dynamics.hpp"

using namespace rosc;

namespace {
const SystemParams kReference(1.0, {2, 1}, {0.5, 1.3});
const PhaseState kInitial({1.0, 1.0}, {0.0, 0.5});
}  // namespace

static void BM_IntegrateReference(benchmark::State& state) {
  dynamics::IntegrateOptions options;
  options.tolerance = 1e-12;
  const double t_end = static_cast<double>(state.range(0)) * std::numbers::pi;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dynamics::integrate(kReference, kInitial, t_end, options));
  }
}
BENCHMARK(BM_IntegrateReference)->Arg(10)->Arg(100);

static void BM_ClosureSearch(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(dynamics::closure_time(kReference, kInitial));
  }
}
BENCHMARK(BM_ClosureSearch);

static void BM_GradientDualPath(benchmark::State& state) {
  analysis::GradientEngine engine(kReference);
  const ObservableRef obs{ObservableKind::ReM, 0, 1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(engine.gradient(obs, kInitial));
  }
}
BENCHMARK(BM_GradientDualPath);

static void BM_IndependenceRank(benchmark::State& state) {
  const SystemParams params(1.0, {3, 2, 1}, {1.0, 1.0, 1.0});
  analysis::GradientEngine engine(params);
  analysis::SamplingSpec sampling;
  sampling.count = static_cast<int>(state.range(0));
  const auto observables = analysis::canonical_invariant_set(params);
  for (auto _ : state) {
    benchmark::DoNotOptimize(analysis::independence_rank(engine, observables, sampling));
  }
}
BENCHMARK(BM_IndependenceRank)->Arg(10)->Arg(100);

BENCHMARK_MAIN();
