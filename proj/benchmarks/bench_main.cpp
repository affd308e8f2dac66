#include <benchmark/benchmark.h>

#include <vector>

#include "nlveh/duffing_analysis.hpp"
#include "nlveh/excitation.hpp"
#include "nlveh/harvester_sim.hpp"
#include "nlveh/optimizer.hpp"

namespace {

using namespace nlveh;

void BM_EllipticK(benchmark::State& state) {
    double m = 0.3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(elliptic_k(m));
        m = m < 0.49 ? m + 1e-6 : 0.3;
    }
}
BENCHMARK(BM_EllipticK);

void BM_PeriodQuadrature(benchmark::State& state) {
    const double lambda = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(equivalent_period_quadrature(lambda, 1.0, 1.0));
    }
}
BENCHMARK(BM_PeriodQuadrature)->Arg(1)->Arg(50)->Arg(10000);

// One objective evaluation: a one-second trace at 10 kHz.
void BM_Simulate(benchmark::State& state) {
    const VibrationTrace trace = synth_sine({1.0, 100.0, 1.0}, 1e-4);
    const HarvesterParams p = HarvesterParams::from_q(1e-3, 100.0, 100.0, 0.005, static_cast<double>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate(p, trace).mean_power);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(trace.size()));
}
BENCHMARK(BM_Simulate)->Arg(0)->Arg(50000000)->Unit(benchmark::kMillisecond);

void BM_SteadyState(benchmark::State& state) {
    const HarvesterParams p = HarvesterParams::from_q(1e-3, 100.0, 100.0, 0.005, 5e7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(steady_state(p, {1.0, 110.0, 0.0}).power);
    }
}
BENCHMARK(BM_SteadyState)->Unit(benchmark::kMillisecond);

void BM_Periodogram(benchmark::State& state) {
    const VibrationTrace trace = synth_sine({1.0, 100.0, 10.0}, 1e-4);
    const auto seg = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(periodogram(trace, seg).size());
    }
}
BENCHMARK(BM_Periodogram)->Arg(1024)->Arg(16384)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
