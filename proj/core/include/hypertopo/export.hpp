#pragma once

#include <ostream>
#include <string>

#include "hypertopo/consensus.hpp"
#include "hypertopo/gossip.hpp"
#include "hypertopo/partition.hpp"
#include "hypertopo/topology.hpp"

namespace hypertopo {

/// Per-state rows (topology_id, N, L, k, lambda, mu, i, pi_i, p_wrong_i,
/// stderr, method) followed by one row with i = "summary" that also fills
/// the trailing p and t columns. Multi-class lambda/mu are ';'-joined.
void write_partition_csv(std::ostream& out, const std::string& topology_id,
                         const Topology& topology, const PartitionReport& report);

/// (cycle, forwarded) rows then a "summary" row carrying the total.
void write_gossip_csv(std::ostream& out, const GossipMetrics& metrics);

/// (round, leader, round_time_s, committed_tx, throughput_tps) rows then a
/// "summary" row with the overall throughput.
void write_consensus_csv(std::ostream& out, const ThroughputReport& report);

}  // namespace hypertopo
