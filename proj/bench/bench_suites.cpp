// Serial reference vs OpenMP kernels for the trial loops.
#include <benchmark/benchmark.h>

#include "kanno/theoremlab.hpp"
#include "kanno/transport.hpp"

using namespace kanno;

namespace {

Execution exec_of(const benchmark::State& state) { return state.range(0) ? Execution::parallel : Execution::serial; }

void BM_Structural(benchmark::State& state) {
  const auto exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(verify_structural_equivalences(4, 3, exec));
  state.SetLabel(state.range(0) ? "parallel" : "serial");
}
BENCHMARK(BM_Structural)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_LocalGlobalBag(benchmark::State& state) {
  const auto s = *builtin_schema("p3");
  SuiteOptions o;
  o.trials = 100;
  o.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(verify_local_to_global(s, Monoid::bag(), o));
  state.SetLabel(state.range(0) ? "parallel" : "serial");
}
BENCHMARK(BM_LocalGlobalBag)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_GammaMonotoneBoolean(benchmark::State& state) {
  const auto s = *builtin_schema("p4");
  SuiteOptions o;
  o.trials = 40;
  o.max_len = 4;
  o.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(verify_gamma_monotonicity(s, Monoid::boolean(), o));
  state.SetLabel(state.range(0) ? "parallel" : "serial");
}
BENCHMARK(BM_GammaMonotoneBoolean)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_TpProbe(benchmark::State& state) {
  const auto m = Monoid::numerical_semigroup({3, 5});
  const auto pool = default_probe_pool(m);
  const auto exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(probe_transportation_property(m, 3, 3, pool, kDefaultBudget, exec));
  state.SetLabel(state.range(0) ? "parallel" : "serial");
}
BENCHMARK(BM_TpProbe)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
