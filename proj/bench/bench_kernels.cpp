#include <benchmark/benchmark.h>

#include "lensgrid/complex.hpp"
#include "lensgrid/gradings.hpp"
#include "lensgrid/homology.hpp"

using namespace lensgrid;

namespace {

// L(5,2), grid number 3: 750 generators.
GridDiagram bench_diagram() { return GridDiagram::from_columns({5, 2}, {0, 4, 8}, {7, 2, 3}); }

void BM_BoundarySerial(benchmark::State& state) {
  const auto mt = MarkedTorus::from(bench_diagram());
  for (auto _ : state) benchmark::DoNotOptimize(build_boundary_serial(mt, BoundaryVariant::Minus));
}

void BM_BoundaryParallel(benchmark::State& state) {
  const auto mt = MarkedTorus::from(bench_diagram());
  for (auto _ : state) benchmark::DoNotOptimize(build_boundary(mt, BoundaryVariant::Minus));
}

void BM_GradingsSerial(benchmark::State& state) {
  const GradingContext ctx(bench_diagram());
  const auto gens = GeneratorSpace(5, 3).all();
  for (auto _ : state) benchmark::DoNotOptimize(grade_all_serial(ctx, gens));
}

void BM_GradingsParallel(benchmark::State& state) {
  const GradingContext ctx(bench_diagram());
  const auto gens = GeneratorSpace(5, 3).all();
  for (auto _ : state) benchmark::DoNotOptimize(grade_all(ctx, gens));
}

void run_homology(benchmark::State& state, bool parallel) {
  const GridDiagram d = bench_diagram();
  const GradingContext ctx(d);
  const auto grades = grade_all(ctx, GeneratorSpace(5, 3).all());
  const auto tilde = build_boundary(d, BoundaryVariant::Tilde);
  HomologyOptions opt;
  opt.parallel = parallel;
  for (auto _ : state) benchmark::DoNotOptimize(tilde_homology(tilde, grades, 5, 3, opt));
}

void BM_HomologySerial(benchmark::State& state) { run_homology(state, false); }
void BM_HomologyParallel(benchmark::State& state) { run_homology(state, true); }

}  // namespace

BENCHMARK(BM_BoundarySerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BoundaryParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GradingsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GradingsParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HomologySerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HomologyParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
