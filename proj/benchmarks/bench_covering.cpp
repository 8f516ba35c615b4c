#include "covol/comodule.hpp"
#include "covol/covering.hpp"
#include "covol/fixtures.hpp"

#include <benchmark/benchmark.h>

using namespace covol;

namespace {

void BM_SmashQuiverFree2(benchmark::State& state) {
  const auto f = doubleLoopFixture();
  const auto w = Window::ball(f.weighting.group, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(SmashQuiver(f.quiver, f.weighting, w));
  state.counters["vertices"] = static_cast<double>(w.size());
}
BENCHMARK(BM_SmashQuiverFree2)->DenseRange(1, 4);

void BM_ClosureSl2(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto f = sl2Fixture(m);
  for (auto _ : state) benchmark::DoNotOptimize(subcoalgebraClosure(f.b.indexPtr(), f.generators));
  state.counters["dim"] = static_cast<double>(f.b.dimension());
}
BENCHMARK(BM_ClosureSl2)->DenseRange(3, 9, 2);

void BM_CrossCheckSl2(benchmark::State& state) {
  const auto f = sl2Fixture(static_cast<std::size_t>(state.range(0)));
  const auto pres = spanningTreeAndPi1(f.quiver, 0);
  const auto w = Window::ball(Group::integers(), 2);
  for (auto _ : state) benchmark::DoNotOptimize(theoremCovCrossCheck(f.b, f.weighting, pres, w));
}
BENCHMARK(BM_CrossCheckSl2)->DenseRange(3, 7, 2);

void BM_EIso(benchmark::State& state) {
  const auto f = kroneckerFixture();
  const SmashCover sc(f.quiver, f.weighting, Window::ball(Group::integers(), static_cast<std::size_t>(state.range(0))),
                      f.truncation);
  for (auto _ : state) benchmark::DoNotOptimize(verifyEIso(sc));
}
BENCHMARK(BM_EIso)->DenseRange(2, 8, 2);

void BM_GradabilityProbeBand(benchmark::State& state) {
  const auto f = kroneckerFixture();
  const auto& index = f.b.index();
  Comodule band({"m0", "m1"});
  band.setCoefficient(0, 0, SparseVector::unit(1));
  band.setCoefficient(0, 1, pathVector(index, {"a"}) + pathVector(index, {"b"}));
  band.setCoefficient(1, 1, SparseVector::unit(0));
  const auto w = Window::ball(Group::integers(), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gradabilityProbe(band, index, f.weighting, w));
}
BENCHMARK(BM_GradabilityProbeBand)->DenseRange(1, 4);

}  // namespace

BENCHMARK_MAIN();
