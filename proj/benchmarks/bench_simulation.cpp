#include <benchmark/benchmark.h>

#include <hypertopo/consensus.hpp>
#include <hypertopo/gossip.hpp>

using namespace hypertopo;

static void BM_Gossip(benchmark::State& state) {
    const auto t = build_complete_hypercube(static_cast<unsigned>(state.range(0)));
    GossipConfig c;
    c.cycles = 500;
    c.delay_prob = 0.5;
    for (auto _ : state) benchmark::DoNotOptimize(run_gossip(t, c));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(t.node_count() * c.cycles));
}
BENCHMARK(BM_Gossip)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

static void BM_Consensus(benchmark::State& state) {
    const auto t = build_complete_hypercube(static_cast<unsigned>(state.range(0)));
    ConsensusConfig c;
    c.rounds = 200;
    for (auto _ : state) benchmark::DoNotOptimize(run_consensus(t, c));
}
BENCHMARK(BM_Consensus)->DenseRange(2, 10, 4)->Unit(benchmark::kMillisecond);
