#include <benchmark/benchmark.h>

#include "maxsliced/exact_ot.hpp"
#include "maxsliced/flow.hpp"
#include "maxsliced/maxsliced.hpp"
#include "maxsliced/ot1d.hpp"
#include "maxsliced/projection.hpp"
#include "maxsliced/sliced.hpp"

using namespace maxsliced;

namespace {

PointCloud cloud(std::size_t n, std::size_t d, std::uint64_t stream, double shift = 0.0) {
  Philox rng({Seed{1}, stream});
  std::vector<double> v(n * d);
  for (double& x : v) x = shift + rng.normal();
  return PointCloud(n, d, std::move(v));
}

void BM_SortedW2(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = cloud(n, 1, 0), b = cloud(n, 1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(sorted_w2_squared(a.data(), b.data()));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SortedW2)->RangeMultiplier(4)->Range(64, 65536)->Complexity(benchmark::oNLogN);

void BM_ExactW2(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = cloud(n, 8, 0), b = cloud(n, 8, 1);
  for (auto _ : state) benchmark::DoNotOptimize(w2_exact(a, b).value);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ExactW2)->RangeMultiplier(2)->Range(32, 512)->Complexity(benchmark::oNCubed)
    ->Unit(benchmark::kMillisecond);

void BM_Sliced(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const auto a = cloud(256, 32, 0), b = cloud(256, 32, 1);
  const auto dirs = sample_directions(k, 32, Seed{2});
  for (auto _ : state) benchmark::DoNotOptimize(sliced_distance(a, b, dirs, Order(2.0)).value);
}
BENCHMARK(BM_Sliced)->RangeMultiplier(4)->Range(4, 1024);

void BM_GridOracle(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = cloud(n, 2, 0), b = cloud(n, 2, 1, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(grid_oracle_2d(a, b).value);
}
BENCHMARK(BM_GridOracle)->RangeMultiplier(4)->Range(16, 512)->Unit(benchmark::kMillisecond);

void BM_SphereAscent(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto a = cloud(128, d, 0), b = cloud(128, d, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sphere_ascent_restarts(a, b, 8, 200, 1.0, Seed{3}).value);
  }
}
BENCHMARK(BM_SphereAscent)->RangeMultiplier(4)->Range(2, 128)->Unit(benchmark::kMillisecond);

void BM_LogisticSurrogate(benchmark::State& state) {
  const auto a = cloud(256, 2, 0), b = cloud(256, 2, 1, 3.0);
  const auto init = Discriminator::identity(UnitDirection::axis(2, 1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(logistic_surrogate_direction(a, b, init).direction[0]);
  }
}
BENCHMARK(BM_LogisticSurrogate)->Unit(benchmark::kMillisecond);

void BM_FlowStep(benchmark::State& state) {
  const auto target = make_ring_mixture(512, Seed{4});
  FlowConfig c;
  c.outer_steps = 100;
  for (auto _ : state) benchmark::DoNotOptimize(train(target, c).loss_history.back().second);
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_FlowStep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
