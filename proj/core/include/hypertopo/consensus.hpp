#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hypertopo/topology.hpp"

namespace hypertopo {

enum class LeaderPolicy : std::uint8_t {
    /// A uniformly random node leads every round.
    random_rotation,
    /// The highest-degree node (lowest index on ties) always leads.
    fixed_hub,
    /// A uniformly random node leads for `rotate_period` rounds at a time.
    rotate_every,
};

const char* to_string(LeaderPolicy policy) noexcept;
std::optional<LeaderPolicy> leader_policy_from_string(std::string_view s);

struct ConsensusConfig {
    double tx_rate = 60000.0;
    std::uint32_t tx_size = 24;
    std::uint32_t block_cap = 10000;
    std::uint64_t max_block_bytes = 235'000'000;
    /// Bits per second per link.
    double link_bandwidth = 10e9;
    /// Seconds per hop; 0 is the ideal network.
    double link_latency = 0.0;
    std::uint32_t vote_bytes = 64;
    LeaderPolicy leader_policy = LeaderPolicy::random_rotation;
    std::size_t rotate_period = 1000;
    std::size_t rounds = 1000;
    std::uint64_t seed = 1;

    void validate() const;
};

/// Store-and-forward broadcast over the breadth-first tree rooted at
/// `source` (children in ascending index order). Every tree edge costs
/// payload*8/bandwidth + latency and a node sends to its children one at a
/// time. Returns when the last node has the payload.
double broadcast_time(const Topology& topology, NodeIndex source, std::uint64_t payload_bytes,
                      const ConsensusConfig& config);

/// Votes flow up the same tree: each node forwards vote_bytes for every
/// node in its subtree once all of its children have reported, and a parent
/// receives from one child at a time.
double vote_collection_time(const Topology& topology, NodeIndex leader,
                            const ConsensusConfig& config);

struct RoundRecord {
    std::size_t round = 0;
    NodeIndex leader = 0;
    double round_time_s = 0.0;
    std::uint64_t committed_tx = 0;
    double throughput_tps = 0.0;
};

struct ThroughputReport {
    /// Committed transactions over elapsed time.
    double throughput_tps = 0.0;
    /// Mean and population std of the per-round throughput.
    double tps_mean = 0.0;
    double tps_std = 0.0;
    double elapsed_s = 0.0;
    std::uint64_t committed_total = 0;
    std::vector<RoundRecord> rounds;
};

/// Propose-broadcast plus vote-collect rounds. Transactions arrive at
/// tx_rate; each round the leader packs min(block_cap, pending) of them.
ThroughputReport run_consensus(const Topology& topology, const ConsensusConfig& config);

struct ConsensusSweepRow {
    std::string family;
    std::size_t nodes = 0;
    double throughput_tps = 0.0;
    double mean_round_time_s = 0.0;
};

struct ConsensusFamilySummary {
    std::string family;
    double mean_tps = 0.0;
    double std_tps = 0.0;
};

struct ConsensusSweep {
    std::vector<ConsensusSweepRow> rows;
    std::vector<ConsensusFamilySummary> families;
};

struct NamedTopology {
    std::string family;
    const Topology* topology = nullptr;
    /// Overrides config.leader_policy for this entry.
    std::optional<LeaderPolicy> policy;
};

/// Runs every entry with the same config and summarises throughput across
/// sizes per family (families in order of first appearance).
ConsensusSweep sweep_consensus(std::span<const NamedTopology> entries, const ConsensusConfig& config);

}  // namespace hypertopo
