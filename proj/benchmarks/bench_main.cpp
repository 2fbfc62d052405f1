#include <benchmark/benchmark.h>

#include "qspdc/f22.hpp"
#include "qspdc/random.hpp"
#include "qspdc/search.hpp"

namespace {

using namespace qspdc;

UnitarySeq random_sequence(Rng& rng, int slots) {
  UnitarySeq seq;
  for (int i = 0; i <= slots; ++i) seq.mats.push_back(random_su2(rng));
  return seq;
}

void BM_BuildProduct(benchmark::State& state) {
  Rng rng(1);
  const UnitarySeq seq = random_sequence(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_product(seq));
}
BENCHMARK(BM_BuildProduct)->Arg(4)->Arg(16)->Arg(64);

void BM_Factorize(benchmark::State& state) {
  Rng rng(2);
  const MatLaurent1c f = build_product(random_sequence(rng, static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(haah_decompose(f));
}
BENCHMARK(BM_Factorize)->Arg(4)->Arg(12)->Arg(20);

void BM_DefectAndGradient(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Parameterization param(n, n, true);
  const DefectObjective obj(param, n);
  Rng rng(3);
  const auto theta = random_start(param, rng);
  std::vector<double> grad;
  for (auto _ : state) benchmark::DoNotOptimize(obj.value_and_gradient(theta, grad));
}
BENCHMARK(BM_DefectAndGradient)->Arg(1)->Arg(2)->Arg(3);

void BM_PermutationSearch(benchmark::State& state) {
  Rng rng(4);
  UnitarySeq seq = random_sequence(rng, 4);
  seq.word = "abba";
  const MatLaurent2c f = build_alt_product(seq);
  for (auto _ : state) benchmark::DoNotOptimize(permutation_decompose(f, 2, 2));
}
BENCHMARK(BM_PermutationSearch);

void BM_CornerTestExact(benchmark::State& state) {
  const ExactCounterexample ce = counterexample_f22();
  for (auto _ : state) benchmark::DoNotOptimize(corner_test(ce.rescaled));
}
BENCHMARK(BM_CornerTestExact);

}  // namespace

BENCHMARK_MAIN();
