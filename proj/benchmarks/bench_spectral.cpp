#include <benchmark/benchmark.h>

#include "zf/graph.hpp"
#include "zf/spectral.hpp"

namespace {

// Sizes on both sides of the switch from full reorthogonalisation.
void BM_SecondEigenvalue(benchmark::State &state) {
    const zf::RegularGraph g = zf::sample_simple(static_cast<int>(state.range(0)), 3, 3).graph;
    for (auto _ : state) benchmark::DoNotOptimize(zf::second_eigenvalue(g));
}
BENCHMARK(BM_SecondEigenvalue)->Arg(1000)->Arg(4000)->Arg(20000)->Arg(100000)->Unit(benchmark::kMillisecond);

} // namespace
