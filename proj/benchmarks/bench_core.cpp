#include <benchmark/benchmark.h>

#include "isocube/decomposition.hpp"
#include "isocube/hypercontractivity.hpp"
#include "isocube/isoperimetry.hpp"
#include "isocube/random.hpp"
#include "isocube/sections.hpp"

using namespace isocube;

namespace {

CubeSet random_set(int n, double density, std::uint64_t seed) {
  GeneratorSpec spec;
  spec.kind = GeneratorKind::DensityRandom;
  spec.n = n;
  spec.density = density;
  spec.seed = seed;
  return generate(spec).set;
}

CubeSet cube_union(int n, int cubes, std::uint64_t seed) {
  GeneratorSpec spec;
  spec.kind = GeneratorKind::CubeUnion;
  spec.n = n;
  spec.cube_count = cubes;
  spec.min_codim = 2;
  spec.max_codim = 8;
  spec.noise = 0.02;
  spec.seed = seed;
  return generate(spec).set;
}

void BM_EdgeBoundary(benchmark::State& state) {
  const CubeSet a = random_set(static_cast<int>(state.range(0)), 0.5, 1);
  for (auto _ : state) benchmark::DoNotOptimize(edge_boundary(a));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(a.universe_size()));
}
BENCHMARK(BM_EdgeBoundary)->DenseRange(8, 20, 4);

void BM_InfluenceProfile(benchmark::State& state) {
  const CubeSet a = random_set(static_cast<int>(state.range(0)), 0.3, 2);
  for (auto _ : state) benchmark::DoNotOptimize(influence_profile(a));
}
BENCHMARK(BM_InfluenceProfile)->DenseRange(8, 20, 4);

void BM_SectionTable(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CubeSet a = random_set(n, 0.3, 3);
  const CoordSet half = CoordSet(CoordSet::full(n / 2).mask());
  for (auto _ : state) benchmark::DoNotOptimize(section_table(a, half));
}
BENCHMARK(BM_SectionTable)->DenseRange(8, 16, 4);

void BM_SphericalAverage(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PseudoBooleanFn f = PseudoBooleanFn::indicator(random_set(n, 0.5, 4));
  const int ell = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(spherical_average(f, ell));
}
BENCHMARK(BM_SphericalAverage)->Args({10, 1})->Args({14, 1})->Args({14, 2})->Args({16, 2});

void BM_BestSubcubeExhaustive(benchmark::State& state) {
  const CubeSet a = random_set(static_cast<int>(state.range(0)), 0.2, 5);
  for (auto _ : state) benchmark::DoNotOptimize(best_subcube(a, SearchMode::Exhaustive));
}
BENCHMARK(BM_BestSubcubeExhaustive)->DenseRange(4, 10, 2);

void BM_BestSubcubeGreedy(benchmark::State& state) {
  const CubeSet a = random_set(static_cast<int>(state.range(0)), 0.2, 6);
  for (auto _ : state) benchmark::DoNotOptimize(best_subcube(a, SearchMode::Greedy));
}
BENCHMARK(BM_BestSubcubeGreedy)->DenseRange(8, 16, 4);

void BM_Decompose(benchmark::State& state) {
  const CubeSet a = cube_union(static_cast<int>(state.range(0)), 8, 7);
  for (auto _ : state) benchmark::DoNotOptimize(decompose(a, 0.1));
}
BENCHMARK(BM_Decompose)->DenseRange(8, 14, 2)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
