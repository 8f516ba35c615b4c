#include "covol/exactlin.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace covol;

namespace {

std::vector<SparseVector> randomRows(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-5, 5);
  std::uniform_int_distribution<int> density(0, 99);
  std::vector<SparseVector> out(rows);
  for (auto& r : out)
    for (std::size_t c = 0; c < cols; ++c)
      if (density(rng) < 30) r.add(c, Rational(coeff(rng)));
  return out;
}

void BM_Rref(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto rows = randomRows(n, 2 * n, 7);
  for (auto _ : state) benchmark::DoNotOptimize(rref(rows));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Rref)->RangeMultiplier(2)->Range(8, 64)->Complexity();

void BM_BlockPartition(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto space = rref(randomRows(n / 2, n, 11));
  for (auto _ : state) benchmark::DoNotOptimize(finestBlockPartition(space));
}
BENCHMARK(BM_BlockPartition)->RangeMultiplier(2)->Range(8, 64);

void BM_SmithNormalForm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long long> entry(-9, 9);
  std::vector<std::vector<long long>> rows(n, std::vector<long long>(n));
  for (auto& r : rows)
    for (auto& x : r) x = entry(rng);
  const auto m = IntMatrix::fromRows(rows);
  for (auto _ : state) benchmark::DoNotOptimize(smithNormalForm(m));
}
BENCHMARK(BM_SmithNormalForm)->DenseRange(4, 16, 4);

}  // namespace
