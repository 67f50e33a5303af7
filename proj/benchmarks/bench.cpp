#include <benchmark/benchmark.h>

#include <chenciner/classify.hpp>
#include <chenciner/config.hpp>
#include <chenciner/normal_form.hpp>
#include <chenciner/series.hpp>
#include <chenciner/simulate.hpp>
#include <chenciner/transform.hpp>

#include <utility>
#include <vector>

namespace {

using namespace chenciner;

// Every coefficient nonzero: worst case for the exact-rational arithmetic.
BivariateSeries dense_series(int order, int salt) {
  std::vector<SeriesTerm> terms;
  for (int i = 0; i <= order; ++i)
    for (int j = 0; i + j <= order; ++j)
      terms.push_back({i, j, Rational(salt + 2 * i + 3 * j + 1, 1 + (i + j + salt) % 7)});
  return BivariateSeries::from_terms(order, terms);
}

void BM_SeriesMultiply(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const BivariateSeries a = dense_series(order, 1);
  const BivariateSeries b = dense_series(order, 2);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_SeriesMultiply)->Arg(4)->Arg(8)->Arg(12);

void BM_SeriesCompose(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const BivariateSeries outer = dense_series(order, 3);
  const BivariateSeries raw1 = dense_series(order, 4);
  const BivariateSeries raw2 = dense_series(order, 5);
  const BivariateSeries s1 = raw1 - BivariateSeries::constant(raw1.coeff(0, 0), order);
  const BivariateSeries s2 = raw2 - BivariateSeries::constant(raw2.coeff(0, 0), order);
  for (auto _ : state) benchmark::DoNotOptimize(outer.compose(s1, s2));
}
BENCHMARK(BM_SeriesCompose)->Arg(4)->Arg(8);

void BM_BuildTransform(benchmark::State& state) {
  const NormalFormSystem sys = reference_system();
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_transform(sys, k));
}
BENCHMARK(BM_BuildTransform)->Arg(2)->Arg(4);

void BM_ClassifyPoint(benchmark::State& state) {
  const NormalFormSystem sys = reference_system();
  const ParameterTransform t = build_transform(sys, 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(classify_alpha_point(sys, t, {-0.017, 0.015}));
}
BENCHMARK(BM_ClassifyPoint);

void BM_DiagramRaster(benchmark::State& state) {
  const ParameterTransform t = build_transform(reference_system(), 2);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(diagram_raster(t, MuWindow{}, n, n));
}
BENCHMARK(BM_DiagramRaster)->Arg(101);

void BM_OrbitRun(benchmark::State& state) {
  // A start that drifts below detection resolution: the budget is always
  // exhausted, so every iteration costs the same number of map steps.
  const NormalFormSystem sys = reference_system(4, 0.02);
  const std::pair<double, double> alpha{-0.015719, 0.015};
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(iterate_orbit(sys, alpha, 0.012, 0.0, n));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_OrbitRun)->Arg(20000);

void BM_VerifyPortrait(benchmark::State& state) {
  const NormalFormSystem sys = reference_system(4, 0.03);
  const ParameterTransform t = build_transform(reference_system(), 2);
  ProbePlan plan;
  plan.n_max = 400;
  for (auto _ : state)
    benchmark::DoNotOptimize(verify_portrait(sys, t, {-0.5, 0.05}, plan));
}
BENCHMARK(BM_VerifyPortrait);

}  // namespace

BENCHMARK_MAIN();
