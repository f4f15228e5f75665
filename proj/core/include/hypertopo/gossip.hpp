#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "hypertopo/topology.hpp"

namespace hypertopo {

struct GossipConfig {
    std::size_t cycles = 5000;
    /// Time units per cycle. Exchanges are instantaneous within a cycle, so
    /// this only labels the time axis of exported series.
    std::uint32_t cycle_len = 100;
    std::uint32_t fanout = 4;
    /// Probability that an exchange attempt is suppressed this cycle.
    double delay_prob = 0.0;
    std::uint64_t seed = 1;

    void validate() const;
};

struct GossipMetrics {
    std::vector<std::uint64_t> forwarded_per_cycle;
    std::uint64_t total_forwarded = 0;
    std::uint64_t attempted_exchanges = 0;
    /// Per (node, cycle): number of completed exchanges the node received.
    /// Maps in-degree -> number of (node, cycle) pairs.
    std::map<std::uint32_t, std::uint64_t> in_degree_histogram;
    /// Messages sent by each node (push for initiated exchanges, reply for
    /// received ones).
    std::vector<std::uint64_t> per_node_forwarded;
};

/// Cycle-driven push-pull gossip over the physical neighbour sets. Each
/// cycle every node picks min(fanout, degree) distinct neighbours; each
/// exchange is independently suppressed with probability delay_prob and
/// otherwise forwards two messages (push and reply).
GossipMetrics run_gossip(const Topology& topology, const GossipConfig& config);

struct GossipSweepRow {
    std::size_t nodes = 0;
    double mean_total = 0.0;
    double mean_per_cycle = 0.0;
    std::vector<std::uint64_t> totals;
};

/// Runs every topology with seeds config.seed .. config.seed + seeds - 1
/// and averages. Rows follow the input order.
std::vector<GossipSweepRow> sweep_sizes(std::span<const Topology> topologies,
                                        const GossipConfig& config, std::size_t seeds = 3);

}  // namespace hypertopo
