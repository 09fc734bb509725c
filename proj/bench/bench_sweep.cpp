#include <benchmark/benchmark.h>

#include "qvcz/coherence.hpp"

using namespace qvcz;

namespace {

std::vector<double> nu_grid(int points) {
    std::vector<double> v(points);
    for (int i = 0; i < points; ++i) v[i] = 4.0 * i / (points - 1);
    return v;
}

void BM_Reference(benchmark::State& state) {
    const auto nus = nu_grid(static_cast<int>(state.range(0)));
    const QuadratureSpec spec;
    for (auto _ : state) {
        for (double nu : nus) benchmark::DoNotOptimize(g2_matrix_numeric(SourceModel::unpolarized(), nu, spec));
    }
    state.SetItemsProcessed(state.iterations() * nus.size());
}

void BM_EngineSerial(benchmark::State& state) {
    const auto nus = nu_grid(static_cast<int>(state.range(0)));
    const CoherenceEngine engine(SourceModel::unpolarized(), QuadratureSpec{});
    for (auto _ : state) benchmark::DoNotOptimize(engine.sweep_serial(nus));
    state.SetItemsProcessed(state.iterations() * nus.size());
}

void BM_EngineParallel(benchmark::State& state) {
    const auto nus = nu_grid(static_cast<int>(state.range(0)));
    const CoherenceEngine engine(SourceModel::unpolarized(), QuadratureSpec{});
    for (auto _ : state) benchmark::DoNotOptimize(engine.sweep_parallel(nus));
    state.SetItemsProcessed(state.iterations() * nus.size());
}

}  // namespace

BENCHMARK(BM_Reference)->Arg(81)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EngineSerial)->Arg(81)->Arg(801)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EngineParallel)->Arg(81)->Arg(801)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
