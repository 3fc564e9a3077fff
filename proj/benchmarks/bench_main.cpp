#include <benchmark/benchmark.h>

#include "qprobe/sampler.hpp"

namespace {

using namespace qprobe;

const std::vector<SampleRecord>& points() {
  static const auto records = draw(builtin_scenario("full"), 1, 1024);
  return records;
}

void BM_EffectClosedForm(benchmark::State& state) {
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(effect_closed_form(points()[i++ & 1023].point));
}
BENCHMARK(BM_EffectClosedForm);

void BM_EffectMatrixPath(benchmark::State& state) {
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(effect_matrix_path(points()[i++ & 1023].point));
}
BENCHMARK(BM_EffectMatrixPath);

void BM_CartanExp(benchmark::State& state) {
  double c = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cartan_exp(c, -0.4, 0.7));
    c += 1e-9;
  }
}
BENCHMARK(BM_CartanExp);

void BM_EvaluateTradeoff(benchmark::State& state) {
  const Effect e = effect_closed_form(points()[3].point);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_tradeoff(e));
}
BENCHMARK(BM_EvaluateTradeoff);

void BM_MonteCarloF(benchmark::State& state) {
  const Effect e = effect_closed_form(points()[5].point);
  for (auto _ : state) benchmark::DoNotOptimize(mc_fidelity_F(e, static_cast<std::uint64_t>(state.range(0)), 7));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarloF)->Arg(1 << 16)->Unit(benchmark::kMillisecond);

void BM_MonteCarloG(benchmark::State& state) {
  const Effect e = effect_closed_form(points()[5].point);
  for (auto _ : state) benchmark::DoNotOptimize(mc_fidelity_G(e, static_cast<std::uint64_t>(state.range(0)), 7));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarloG)->Arg(1 << 16)->Unit(benchmark::kMillisecond);

void BM_DrawRecords(benchmark::State& state) {
  const Scenario& s = builtin_scenario("full");
  for (auto _ : state) benchmark::DoNotOptimize(draw(s, 42, static_cast<std::uint64_t>(state.range(0))));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DrawRecords)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
