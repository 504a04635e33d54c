// Serial reference vs OpenMP kernel for each parallel hot spot. Set
// TODALAB_THREADS to vary the thread count of the parallel variants.

#include <benchmark/benchmark.h>

#include "todalab/critical/critical.hpp"
#include "todalab/mirror/chart.hpp"
#include "todalab/oscillatory/integrals.hpp"
#include "todalab/semiclassical/semiclassical.hpp"
#include "todalab/virasoro/quantization.hpp"

using namespace todalab;

namespace {

Execution mode(const benchmark::State& state) { return state.range(0) ? Execution::Parallel : Execution::Serial; }

void BM_TrapezoidN2(benchmark::State& state) {
  const std::vector<double> lambda{0.25, 0.125, -0.375}, q{1.0, 1.0};
  const auto chart = mirror::all_charts(mirror::MirrorGraph(2)).front();
  const auto g = osc::chart_phase(chart, lambda, q);
  const double h = 1.0;
  const auto minimum = osc::locate_minimum(g);
  auto grid = osc::fit_box(g, minimum, h, {});
  grid.step = 0.0625;
  const double offset = g.value(minimum);
  for (auto _ : state) benchmark::DoNotOptimize(osc::trapezoid_sum(g, grid, h, offset, mode(state)));
  state.counters["nodes"] = static_cast<double>(grid.total_nodes());
}
BENCHMARK(BM_TrapezoidN2)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_CensusN3(benchmark::State& state) {
  const std::vector<double> l{0.75, 0.25, -0.375, -0.625};
  const std::vector<critical::cplx> q{0.5, 0.7, 0.3};
  for (auto _ : state) benchmark::DoNotOptimize(critical::all_critical_points(3, l, q, {}, mode(state)));
}
BENCHMARK(BM_CensusN3)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ClassicalLimitN3(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(semiclassical::verify_all_classical_limits(3, 3, mode(state)));
}
BENCHMARK(BM_ClassicalLimitN3)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_VirasoroCommutator(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(virasoro::commutation_check(2, -1, 4, 3, mode(state)));
}
BENCHMARK(BM_VirasoroCommutator)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_EigenStencilN1(benchmark::State& state) {
  const auto exec = mode(state);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        osc::eigen_residual(1, {0.5, -0.5}, -1.0, {0.0, 0.0}, 1e-2, std::nullopt, {}, exec));
}
BENCHMARK(BM_EigenStencilN1)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
