#include <benchmark/benchmark.h>

#include "zf/de_solver.hpp"
#include "zf/hole_bound.hpp"

namespace {

void BM_RunPlain(benchmark::State &state) {
    const int d = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(zf::run_plain(d).upper_bound);
}
BENCHMARK(BM_RunPlain)->DenseRange(3, 14, 11)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_RunSmartD3(benchmark::State &state) {
    for (auto _ : state) benchmark::DoNotOptimize(zf::run_smart_d3().upper_bound);
}
BENCHMARK(BM_RunSmartD3)->Unit(benchmark::kMillisecond);

void BM_ThresholdA(benchmark::State &state) {
    const int d = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(zf::threshold_a(d).a_threshold);
}
BENCHMARK(BM_ThresholdA)->Arg(3)->Arg(14)->Unit(benchmark::kMicrosecond);

} // namespace
