#include <benchmark/benchmark.h>

#include "qlattice/qlattice.hpp"

namespace {

using namespace qlattice;

void BM_Meet(benchmark::State& state) {
  const auto n = static_cast<Index>(state.range(0));
  Rng rng(1);
  const Subspace h1 = random_subspace(n, n / 2 + 1, rng);
  const Subspace h2 = random_subspace(n, n / 2 + 1, rng);
  for (auto _ : state) benchmark::DoNotOptimize(meet(h1, h2));
}
BENCHMARK(BM_Meet)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_QuantumBounds(benchmark::State& state) {
  const auto n = static_cast<Index>(state.range(0));
  Rng rng(2);
  const Subspace h1 = random_subspace(n, n / 2, rng);
  const Subspace h2 = random_subspace(n, n / 2, rng);
  const StateVector s = random_state(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(quantum_bounds(s, h1, h2));
}
BENCHMARK(BM_QuantumBounds)->Arg(4)->Arg(12);

void BM_MinRankExample(benchmark::State& state) {
  ComplexMatrix m = ComplexMatrix::Zero(9, 2);
  m(0, 0) = m(4, 0) = 1.0;
  m(1, 1) = m(5, 1) = 1.0;
  const Subspace h = orthonormalize(m);
  const BipartiteSpace space(3, 3);
  for (auto _ : state) {
    Rng rng(3);
    benchmark::DoNotOptimize(min_rank(h, space, rng));
  }
}
BENCHMARK(BM_MinRankExample)->Unit(benchmark::kMillisecond);

void BM_ChshFamily(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_family(LocalUnitary::balanced()));
}
BENCHMARK(BM_ChshFamily);

void BM_PovmMeasure(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const WeylSystem sys(d);
  Rng rng(4);
  const CoherentFamily fa = coherent_family(sys, generic_seed(d, 1, rng));
  const CoherentFamily fb = coherent_family(sys, generic_seed(d, 2, rng));
  const BipartiteState s(BipartiteSpace(d, d), random_state(d * d, rng));
  for (auto _ : state) benchmark::DoNotOptimize(povm_measure(s, fa, fb));
}
BENCHMARK(BM_PovmMeasure)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
