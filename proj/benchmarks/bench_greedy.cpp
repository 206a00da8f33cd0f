#include <benchmark/benchmark.h>

#include "zf/forcing.hpp"
#include "zf/graph.hpp"
#include "zf/greedy.hpp"

namespace {

void BM_SampleSimple(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(zf::sample_simple(n, 3, seed++));
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_SampleSimple)->Arg(10000)->Arg(200000)->Unit(benchmark::kMillisecond);

template <bool Smart>
void BM_Greedy(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    const int d = static_cast<int>(state.range(1));
    const zf::RegularGraph g = zf::sample_simple(n, d, 1).graph;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        auto res = Smart ? zf::smart_degree_greedy(g, seed++) : zf::degree_greedy(g, seed++);
        benchmark::DoNotOptimize(res.forcing_set_size());
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_Greedy<false>)->Args({10000, 3})->Args({200000, 3})->Args({200000, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Greedy<true>)->Args({10000, 3})->Args({200000, 3})->Unit(benchmark::kMillisecond);

void BM_Closure(benchmark::State &state) {
    const zf::RegularGraph g = zf::sample_simple(static_cast<int>(state.range(0)), 3, 2).graph;
    const auto b = zf::degree_greedy(g, 0).record.forcing_set;
    for (auto _ : state) benchmark::DoNotOptimize(zf::closure(g, b));
}
BENCHMARK(BM_Closure)->Arg(10000)->Arg(200000)->Unit(benchmark::kMillisecond);

} // namespace
