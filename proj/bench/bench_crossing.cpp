#include <benchmark/benchmark.h>

#include "treeline/percolation.hpp"

using namespace treeline;

namespace {

constexpr std::uint64_t kSamples = 20000;

ProductGraph strip_graph(const benchmark::State& state) {
    return ProductGraph({GraphKind::strip, 3, static_cast<int>(state.range(0)), 100});
}

void BM_ReferenceUnionFind(benchmark::State& state) {
    const ProductGraph g = strip_graph(state);
    for (auto _ : state)
        benchmark::DoNotOptimize(reference::estimate_crossing(g, 0.3, kSamples, 1).successes);
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(kSamples));
}

void BM_SerialBfs(benchmark::State& state) {
    const ProductGraph g = strip_graph(state);
    for (auto _ : state)
        benchmark::DoNotOptimize(serial::estimate_crossing(g, 0.3, kSamples, 1).successes);
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(kSamples));
}

void BM_ParallelBfs(benchmark::State& state) {
    const ProductGraph g = strip_graph(state);
    for (auto _ : state)
        benchmark::DoNotOptimize(estimate_crossing(g, 0.3, kSamples, 1).successes);
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(kSamples));
}

void BM_ParallelOffspring(benchmark::State& state) {
    const ProductGraph g({GraphKind::slab, 4, static_cast<int>(state.range(0)), 50});
    for (auto _ : state) benchmark::DoNotOptimize(estimate_offspring(g, 0.24, 4096, 1).mean);
    state.SetItemsProcessed(state.iterations() * 4096);
}

}  // namespace

BENCHMARK(BM_ReferenceUnionFind)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SerialBfs)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ParallelBfs)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ParallelOffspring)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
