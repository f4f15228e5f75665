#include <benchmark/benchmark.h>

#include <hypertopo/markov.hpp>
#include <hypertopo/partition.hpp>
#include <hypertopo/recursion.hpp>

using namespace hypertopo;

static void BM_StationaryStateReduction(benchmark::State& state) {
    const CountChain chain{static_cast<std::size_t>(state.range(0)), 1.0 / 2190, 1.0 / 24};
    for (auto _ : state) benchmark::DoNotOptimize(stationary(chain, StationaryMethod::state_reduction));
}
BENCHMARK(BM_StationaryStateReduction)->Arg(12)->Arg(192)->Arg(768)->Unit(benchmark::kMillisecond);

static void BM_SampledState(benchmark::State& state) {
    const auto t = build_complete_hypercube(static_cast<unsigned>(state.range(0)));
    AnalysisOptions o;
    o.mode = EstimationMode::sampled;
    o.budget = 1000;
    const std::size_t failed = t.link_count() / 2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(conditional_wrong_prob(t, failed, default_quorum(t.node_count()), o));
    }
    state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_SampledState)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_EnumeratedState(benchmark::State& state) {
    const auto t = build_rooted_tree(64, 6);
    AnalysisOptions o;
    o.mode = EstimationMode::exact;
    const auto failed = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(conditional_wrong_prob(t, failed, 33, o));
}
BENCHMARK(BM_EnumeratedState)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_PartitionTolerance64(benchmark::State& state) {
    const auto t = build_recursive(RecursionSpec::semi_symmetric({4, 2}));
    AnalysisOptions o;
    o.budget = 500;
    for (auto _ : state) benchmark::DoNotOptimize(partition_tolerance(t, 33, o));
}
BENCHMARK(BM_PartitionTolerance64)->Unit(benchmark::kMillisecond);
