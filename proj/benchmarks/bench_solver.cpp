#include <benchmark/benchmark.h>

#include "lmoment/hierarchy.hpp"
#include "lmoment/measures.hpp"

using namespace lmoment;

namespace {

SdpProblem level_problem(int d, double a) {
  const Box box{{0.0, 1.0}};
  return assemble_primal(SemialgebraicSet::interval(0.0, 1.0), box_lebesgue_moments(box, 2 * d),
                         mixture_moments({a, {{{0.5}, 1.0}}}, box, 2 * d), d);
}

}  // namespace

// a = 1 is the uniform density (feasible); a = 0.2 puts most mass on one atom.
static void BM_SolveLevel(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const double a = static_cast<double>(state.range(1)) / 10.0;
  const auto problem = level_problem(d, a);
  for (auto _ : state) benchmark::DoNotOptimize(solve(problem));
}
BENCHMARK(BM_SolveLevel)->ArgsProduct({{3, 4, 5}, {2, 10}})->Unit(benchmark::kMillisecond);

static void BM_DetectSweep(benchmark::State& state) {
  const Box box{{0.0, 1.0}};
  const auto set = SemialgebraicSet::interval(0.0, 1.0);
  HierarchyConfig config;
  config.dmax = static_cast<int>(state.range(0));
  const auto gamma = box_lebesgue_moments(box, 2 * config.dmax);
  const auto y = mixture_moments({0.3, {{{0.0}, 1.0}}}, box, 2 * config.dmax);
  for (auto _ : state) benchmark::DoNotOptimize(run_detection(set, gamma, y, config));
}
BENCHMARK(BM_DetectSweep)->Arg(5)->Unit(benchmark::kMillisecond);
