// Microbenchmarks for the hot paths: single depth evaluations, one reflected
// row, the full plan, matrix assembly from a plan, and LOF.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "ildepth/dataset.hpp"
#include "ildepth/local_depth.hpp"
#include "ildepth/locality.hpp"
#include "ildepth/outlier.hpp"
#include "ildepth/pild.hpp"
#include "ildepth/reflection.hpp"
#include "ildepth/rng.hpp"
#include "ildepth/spatial_depth.hpp"

namespace {

ild::Dataset gaussian(std::size_t n, std::size_t d, std::uint64_t seed = 42) {
  ild::Rng rng(seed);
  ild::Dataset X(d);
  std::vector<double> p(d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < d; ++k) p[k] = rng.normal();
    X.add({p.data(), d}, static_cast<std::int64_t>(i));
  }
  return X;
}

void BM_SpatialDepth(benchmark::State& state) {
  std::size_t n = std::size_t(state.range(0)), d = std::size_t(state.range(1));
  ild::Dataset X = gaussian(n, d);
  std::vector<double> z(d, 0.25);
  for (auto _ : state)
    benchmark::DoNotOptimize(ild::spatial_depth({z.data(), d}, X));
  state.SetItemsProcessed(std::int64_t(state.iterations()) * std::int64_t(n));
}
BENCHMARK(BM_SpatialDepth)->Args({200, 2})->Args({1000, 2})->Args({1000, 10});

void BM_ReflectedRow(benchmark::State& state) {
  std::size_t n = std::size_t(state.range(0)), d = std::size_t(state.range(1));
  ild::Dataset X = gaussian(n, d);
  ild::ReflectionContext ctx(X, 1);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ctx.row(X.point(i), X.id(i)));
    i = (i + 1) % n;
  }
  state.SetItemsProcessed(std::int64_t(state.iterations()) * std::int64_t(n) *
                          std::int64_t(n));
}
BENCHMARK(BM_ReflectedRow)->Args({200, 2})->Args({500, 2})->Args({500, 10});

void BM_PildPlan(benchmark::State& state) {
  std::size_t n = std::size_t(state.range(0));
  ild::Dataset X = gaussian(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(ild::make_pild_plan(X, 3, 1));
}
BENCHMARK(BM_PildPlan)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_PildMatrixFromPlan(benchmark::State& state) {
  std::size_t n = std::size_t(state.range(0));
  ild::Dataset X = gaussian(n, 2);
  ild::PildPlan plan = ild::make_pild_plan(X, 3, 1);
  ild::WeightSpec spec = ild::WeightSpec::uniform(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(ild::pild_matrix(plan, spec));
}
BENCHMARK(BM_PildMatrixFromPlan)->Arg(200)->Arg(400);

void BM_Lof(benchmark::State& state) {
  std::size_t n = std::size_t(state.range(0));
  ild::Dataset X = gaussian(n, 2);
  ild::DissimilarityMatrix D = ild::euclidean_dissimilarity(X);
  for (auto _ : state)
    benchmark::DoNotOptimize(ild::lof_scores(D, std::size_t(state.range(1)), 1));
}
BENCHMARK(BM_Lof)->Args({500, 10})->Args({2000, 10});

}  // namespace

BENCHMARK_MAIN();
