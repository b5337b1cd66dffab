#include <benchmark/benchmark.h>

#include "rosc/symbolic.hpp"

using namespace rosc;

static void BM_BuildConstants(benchmark::State& state) {
  const std::vector<int> ratios{static_cast<int>(state.range(0)), static_cast<int>(state.range(1))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(symbolic::build_constants(ratios));
  }
}
BENCHMARK(BM_BuildConstants)->Args({1, 1})->Args({2, 1})->Args({3, 2})->Args({5, 3})->Args({8, 7});

static void BM_VerifyConstancy(benchmark::State& state) {
  const std::vector<int> ratios{static_cast<int>(state.range(0)), static_cast<int>(state.range(1))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(symbolic::verify_constancy(ratios));
  }
}
BENCHMARK(BM_VerifyConstancy)->Args({1, 1})->Args({2, 1})->Args({3, 2})->Args({5, 3});

static void BM_GeneralJ3(benchmark::State& state) {
  const int nx = static_cast<int>(state.range(0));
  const int ny = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(symbolic::general_j3(nx, ny));
  }
}
BENCHMARK(BM_GeneralJ3)->Args({2, 1})->Args({5, 3})->Args({7, 4});

static void BM_BracketExpansion(benchmark::State& state) {
  const std::vector<int> ratios{static_cast<int>(state.range(0)), static_cast<int>(state.range(1))};
  const auto constants = symbolic::build_constants(ratios);
  for (auto _ : state) {
    benchmark::DoNotOptimize(poisson_bracket(constants.mij(0, 1).re, constants.H3));
  }
}
BENCHMARK(BM_BracketExpansion)->Args({2, 1})->Args({5, 3});

BENCHMARK_MAIN();
