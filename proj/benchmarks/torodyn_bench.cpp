// Microbenchmarks for the hot paths: Perron eigendata on avoid-set subshifts,
// orbit iteration on long digit words, and transfer-operator pushforwards.

#include <benchmark/benchmark.h>

#include "torodyn/averaging.hpp"
#include "torodyn/matrix.hpp"
#include "torodyn/orbits.hpp"
#include "torodyn/symbolic.hpp"

using namespace torodyn;

namespace {

symbolic::SftSpec golden_inner() {
  auto ball = symbolic::BallSpec::make(Rational(7, 8), Rational(1, 8));
  return symbolic::avoid_ball_sft(2, ball, 2).first;
}

void BM_PerronGolden(benchmark::State& state) {
  auto spec = golden_inner();
  for (auto _ : state) {
    auto pd = symbolic::perron(spec);
    benchmark::DoNotOptimize(pd.dimension.value);
  }
}
BENCHMARK(BM_PerronGolden);

void BM_PerronWideWindow(benchmark::State& state) {
  // base 3, window 6: a few hundred states after pruning
  auto ball = symbolic::BallSpec::make(Rational(1, 2), Rational(1, 6));
  auto spec = symbolic::avoid_ball_sft(3, ball, static_cast<int>(state.range(0))).first;
  for (auto _ : state) {
    auto pd = symbolic::perron(spec);
    benchmark::DoNotOptimize(pd.entropy.value);
  }
  state.SetLabel(std::to_string(spec.window) + "-window");
}
BENCHMARK(BM_PerronWideWindow)->Arg(4)->Arg(6);

void BM_OrbitIterate(benchmark::State& state) {
  auto spec = golden_inner();
  auto pd = symbolic::perron(spec);
  auto word = symbolic::parry_sample(spec, pd, 4000, 7);
  auto start = orbits::TorusPoint::from_digits(2, word);
  auto map = ToralMap::times(3);
  const auto steps = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    auto trace = orbits::iterate(map, start, steps, 6);
    benchmark::DoNotOptimize(trace.visits.size());
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(steps));
}
BENCHMARK(BM_OrbitIterate)->Arg(1000)->Arg(10000);

void BM_PushforwardDepth8(benchmark::State& state) {
  auto spec = golden_inner();
  auto pd = symbolic::perron(spec);
  auto mu = averaging::parry_grid_measure(spec, pd, 8);
  auto map = ToralMap::times(3);
  for (auto _ : state) {
    auto out = averaging::pushforward(mu, map);
    benchmark::DoNotOptimize(out.weights.size());
  }
}
BENCHMARK(BM_PushforwardDepth8);

void BM_CesaroAverage(benchmark::State& state) {
  auto spec = golden_inner();
  auto pd = symbolic::perron(spec);
  auto mu = averaging::parry_grid_measure(spec, pd, 8);
  const auto terms = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    auto avg = averaging::cesaro_average(mu, 3, terms);
    benchmark::DoNotOptimize(averaging::distance_to_uniform(avg).total_variation);
  }
}
BENCHMARK(BM_CesaroAverage)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
