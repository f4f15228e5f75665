#include <benchmark/benchmark.h>

#include <hypertopo/recursion.hpp>
#include <hypertopo/serialization.hpp>

using namespace hypertopo;

static void BM_CompleteHypercube(benchmark::State& state) {
    const auto dim = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(build_complete_hypercube(dim));
    state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << dim));
}
BENCHMARK(BM_CompleteHypercube)->DenseRange(6, 15, 3)->Unit(benchmark::kMicrosecond);

static void BM_SymmetricRecursion(benchmark::State& state) {
    const auto dim = static_cast<unsigned>(state.range(0));
    const auto spec = RecursionSpec::completely_symmetric(dim, 3);
    for (auto _ : state) benchmark::DoNotOptimize(build_recursive(spec));
}
BENCHMARK(BM_SymmetricRecursion)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

static void BM_TopologyJsonRoundTrip(benchmark::State& state) {
    const auto t = build_recursive(RecursionSpec::semi_symmetric({5, 4, 3}));
    for (auto _ : state) benchmark::DoNotOptimize(topology_from_json(topology_to_json(t)));
}
BENCHMARK(BM_TopologyJsonRoundTrip)->Unit(benchmark::kMillisecond);
