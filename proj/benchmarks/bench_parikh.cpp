#include <benchmark/benchmark.h>

#include "parikh/langfront.hpp"
#include "parikh/partition.hpp"
#include "parikh/semilinear.hpp"
#include "parikh/series.hpp"

using namespace parikh;

namespace {

const std::vector<DiophantineSystem>& systems() {
  static const std::vector<DiophantineSystem> all{
      DiophantineSystem::from_rows({{2, 3}}),
      DiophantineSystem::from_rows({{1, 1, 1}, {0, 1, 2}}),
      DiophantineSystem::from_rows({{1, 2}, {2, 1}}),
      DiophantineSystem::from_rows({{1, 2, 0, 1}, {0, 1, 3, 2}, {2, 0, 1, 1}}),
  };
  return all;
}

BoundedLanguage language(const char* text) {
  GrammarFile f = parse_grammar(text);
  return BoundedLanguage{std::move(f.grammar), std::move(f.bounds)};
}

const char* const kFourLetter =
    "S -> X | Y\nX -> a X d | M\nM -> b M c | eps\nY -> P Q\nP -> a P b | eps\nQ -> c Q d | eps\nbounds: a, b, c, d\n";

}  // namespace

static void BM_BoxSplineOfSystem(benchmark::State& state) {
  const auto& sys = systems()[static_cast<std::size_t>(state.range(0))];
  for (auto _ : state) {
    const BoxSpline b = box_spline_of_system(sys);
    benchmark::DoNotOptimize(bs_eval(b, Point(sys.rows, 7)));
  }
}
BENCHMARK(BM_BoxSplineOfSystem)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

static void BM_EvalBox(benchmark::State& state) {
  const auto& sys = systems()[static_cast<std::size_t>(state.range(0))];
  const BoxSpline b = box_spline_of_system(sys);
  const std::int64_t bound = sys.rows >= 3 ? 8 : 20;
  for (auto _ : state) {
    Integer total = 0;
    for_each_box_point(sys.rows, bound, [&](const Point& x) { total += bs_eval(b, x); });
    benchmark::DoNotOptimize(total);
  }
}
BENCHMARK(BM_EvalBox)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

static void BM_ParikhCountingFunction(benchmark::State& state) {
  const BoundedLanguage bl = language(kFourLetter);
  for (auto _ : state) benchmark::DoNotOptimize(parikh_counting_function(bl).summands().size());
}
BENCHMARK(BM_ParikhCountingFunction)->Unit(benchmark::kMillisecond);

static void BM_DecomposeSemisimple(benchmark::State& state) {
  const SemilinearSet s{2,
                        {LinearSet{{3, 0}, {{3, 0}, {3, 1}, {3, 2}}}, LinearSet{{1, 0}, {{1, 0}, {2, 3}, {3, 1}}},
                         LinearSet{{2, 2}, {{0, 3}, {3, 0}}}}};
  for (auto _ : state) benchmark::DoNotOptimize(decompose_semisimple(s, 16).components.size());
}
BENCHMARK(BM_DecomposeSemisimple)->Unit(benchmark::kMillisecond);

static void BM_TaylorCoefficients(benchmark::State& state) {
  const RationalSeriesExpr e = generating_function({systems()[1]});
  for (auto _ : state) benchmark::DoNotOptimize(taylor_coefficients(e, state.range(0)).size());
}
BENCHMARK(BM_TaylorCoefficients)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
