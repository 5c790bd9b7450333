#include <benchmark/benchmark.h>

#include <random>

#include "edc/engine.hpp"
#include "edc/fixtures.hpp"
#include "edc/geometry.hpp"
#include "edc/int_matrix.hpp"
#include "edc/lattice.hpp"
#include "edc/spectral.hpp"

using namespace edc;

namespace {

IntMatrix random_matrix(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> entry(-4, 4);
  std::bernoulli_distribution keep(0.4);
  IntMatrix A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (keep(rng)) A(i, j) = entry(rng);
  return A;
}

ModelSpec rotation_spec(int k, int N, int m) {
  ModelSpec spec;
  spec.action = fixtures::rotation(2, k);
  spec.N = N;
  spec.m_lo = m;
  spec.m_hi = m;
  return spec;
}

}  // namespace

static void BM_SmithNormalForm(benchmark::State& state) {
  const IntMatrix A = random_matrix(static_cast<int>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(A));
}
BENCHMARK(BM_SmithNormalForm)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMicrosecond);

static void BM_AssembleRotation(benchmark::State& state) {
  const ModelSpec spec = rotation_spec(static_cast<int>(state.range(0)), 1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(to_mixed_complex(spec));
}
BENCHMARK(BM_AssembleRotation)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_CohomologyOfModel(benchmark::State& state) {
  const MixedComplex C = to_mixed_complex(rotation_spec(static_cast<int>(state.range(0)), 1, 1));
  for (auto _ : state) benchmark::DoNotOptimize(cohomology_at(C, 2));
}
BENCHMARK(BM_CohomologyOfModel)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_EquivariantDeligneOctahedron(benchmark::State& state) {
  const auto a = fixtures::antipodal_octahedron();
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(equivariant_deligne(a, N, N));
}
BENCHMARK(BM_EquivariantDeligneOctahedron)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_SpectralSequencePoint(benchmark::State& state) {
  const auto a = SimplicialAction::trivial_action(FiniteGroup::cyclic(static_cast<int>(state.range(0))),
                                                  fixtures::point());
  for (auto _ : state) benchmark::DoNotOptimize(spectral_sequence(a, 1, 3, 0, 2));
}
BENCHMARK(BM_SpectralSequencePoint)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_BundleObstructions(benchmark::State& state) {
  const auto a = fixtures::rotation(2, static_cast<int>(state.range(0)));
  GeometryModel M(a, GeometryKind::Bundle);
  LatticeConnection U{std::vector<Rational>(a.space.count(1), ratio(1, 4))};
  const TripleCochain c0 = lattice_level_zero(M, U);
  for (auto _ : state) benchmark::DoNotOptimize(obstructions(M, c0));
}
BENCHMARK(BM_BundleObstructions)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
