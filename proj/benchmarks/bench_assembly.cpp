#include <benchmark/benchmark.h>

#include "lmoment/hierarchy.hpp"
#include "lmoment/measures.hpp"
#include "lmoment/moment_matrix.hpp"

using namespace lmoment;

static void BM_MomentMap(benchmark::State& state) {
  const auto nvars = static_cast<std::size_t>(state.range(0));
  const int d = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(moment_map(nvars, d));
}
BENCHMARK(BM_MomentMap)->Args({2, 4})->Args({2, 7})->Args({3, 4})->Args({3, 6});

static void BM_AssembleLevel(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto set = SemialgebraicSet::interval(0.0, 1.0);
  const Box box{{0.0, 1.0}};
  const auto gamma = box_lebesgue_moments(box, 2 * d);
  const auto y = mixture_moments({0.5, {{{0.5}, 1.0}}}, box, 2 * d);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_level(set, gamma, y, d));
}
BENCHMARK(BM_AssembleLevel)->DenseRange(2, 7);

// The single translation unit with a main: benchmark_main is built with a
// different LTO setting than this project and does not link.
BENCHMARK_MAIN();
