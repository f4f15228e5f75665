#include "hypertopo/gossip.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "hypertopo/error.hpp"

namespace hypertopo {

void GossipConfig::validate() const {
    if (cycles < 1) throw spec_error("gossip needs at least one cycle");
    if (fanout < 1) throw spec_error("gossip fanout must be at least 1");
    if (!(delay_prob >= 0.0 && delay_prob <= 1.0)) throw spec_error("delay must lie in [0, 1]");
}

GossipMetrics run_gossip(const Topology& topology, const GossipConfig& config) {
    config.validate();
    const std::size_t n = topology.node_count();
    for (NodeIndex v = 0; v < n; ++v) {
        if (topology.degree(v) == 0) {
            throw spec_error("gossip needs every node to have a neighbour (node " +
                             std::to_string(v) + " is isolated)");
        }
    }

    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    GossipMetrics m;
    m.forwarded_per_cycle.resize(config.cycles, 0);
    m.per_node_forwarded.assign(n, 0);
    std::vector<std::uint32_t> in_degree(n);
    std::vector<NodeIndex> scratch;

    for (std::size_t cycle = 0; cycle < config.cycles; ++cycle) {
        std::fill(in_degree.begin(), in_degree.end(), 0);
        std::uint64_t forwarded = 0;
        for (NodeIndex u = 0; u < n; ++u) {
            const auto adj = topology.neighbors(u);
            scratch.resize(adj.size());
            std::transform(adj.begin(), adj.end(), scratch.begin(),
                           [](const Adjacent& a) { return a.node; });
            const std::size_t picks = std::min<std::size_t>(config.fanout, scratch.size());
            for (std::size_t j = 0; j < picks; ++j) {
                std::uniform_int_distribution<std::size_t> pick(j, scratch.size() - 1);
                std::swap(scratch[j], scratch[pick(rng)]);
                const NodeIndex v = scratch[j];
                ++m.attempted_exchanges;
                bool suppressed = config.delay_prob >= 1.0;
                if (config.delay_prob > 0.0 && config.delay_prob < 1.0) {
                    suppressed = coin(rng) < config.delay_prob;
                }
                if (suppressed) continue;
                forwarded += 2;
                ++m.per_node_forwarded[u];
                ++m.per_node_forwarded[v];
                ++in_degree[v];
            }
        }
        m.forwarded_per_cycle[cycle] = forwarded;
        m.total_forwarded += forwarded;
        for (auto d : in_degree) ++m.in_degree_histogram[d];
    }
    return m;
}

std::vector<GossipSweepRow> sweep_sizes(std::span<const Topology> topologies,
                                        const GossipConfig& config, std::size_t seeds) {
    if (seeds < 1) throw spec_error("sweep needs at least one seed");
    std::vector<GossipSweepRow> rows;
    for (const auto& topo : topologies) {
        GossipSweepRow row;
        row.nodes = topo.node_count();
        double sum = 0.0;
        for (std::size_t s = 0; s < seeds; ++s) {
            GossipConfig c = config;
            c.seed = config.seed + s;
            const auto metrics = run_gossip(topo, c);
            row.totals.push_back(metrics.total_forwarded);
            sum += static_cast<double>(metrics.total_forwarded);
        }
        row.mean_total = sum / static_cast<double>(seeds);
        row.mean_per_cycle = row.mean_total / static_cast<double>(config.cycles);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace hypertopo
