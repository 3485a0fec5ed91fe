#include <benchmark/benchmark.h>

#include "opineq/checks.hpp"
#include "opineq/decompose.hpp"
#include "opineq/generators.hpp"
#include "opineq/means.hpp"

using namespace opineq;

static void BM_Eigh(benchmark::State& state) {
  Rng rng(7);
  const auto n = static_cast<std::size_t>(state.range(0));
  const HermMat h = random_hermitian(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(eigh(h));
}
BENCHMARK(BM_Eigh)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

static void BM_GeometricMean(benchmark::State& state) {
  Rng rng(11);
  const auto n = static_cast<std::size_t>(state.range(0));
  const HermMat a = wishart_psd(n, n, rng);
  const HermMat b = wishart_psd(n, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(geometric_mean(a, b));
}
BENCHMARK(BM_GeometricMean)->Arg(4)->Arg(8)->Arg(16);

static void BM_GeometricMeanSingular(benchmark::State& state) {
  Rng rng(13);
  const auto n = static_cast<std::size_t>(state.range(0));
  const HermMat a = wishart_psd(n, n / 2, rng);
  const HermMat b = wishart_psd(n, n / 2, rng);
  for (auto _ : state) benchmark::DoNotOptimize(geometric_mean(a, b));
}
BENCHMARK(BM_GeometricMeanSingular)->Arg(4)->Arg(8)->Arg(16);

static void BM_KatoSupremum(benchmark::State& state) {
  Rng rng(17);
  const auto n = static_cast<std::size_t>(state.range(0));
  const CMat z = ginibre(n, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(kato_supremum(z));
}
BENCHMARK(BM_KatoSupremum)->Arg(4)->Arg(8);

static void BM_Polar(benchmark::State& state) {
  Rng rng(19);
  const auto n = static_cast<std::size_t>(state.range(0));
  const CMat z = ginibre(n, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(polar(z));
}
BENCHMARK(BM_Polar)->Arg(4)->Arg(8)->Arg(16);

static void BM_GeometricCheck(benchmark::State& state) {
  Rng rng(23);
  const auto n = static_cast<std::size_t>(state.range(0));
  const CMat z = ginibre(n, n, rng);
  const HermMat j = kato_supremum(z);
  std::vector<CMat> ops = {ginibre(n, n, rng), ginibre(n, n, rng)};
  const PosMap phi = PosMap::kraus_sum(ops);
  for (auto _ : state) benchmark::DoNotOptimize(check_geometric_domination(phi, z, j, FunPair::power(0.0)));
}
BENCHMARK(BM_GeometricCheck)->Arg(2)->Arg(4)->Arg(6);

BENCHMARK_MAIN();
