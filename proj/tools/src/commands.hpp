#pragma once

#include <optional>
#include <string>
#include <vector>

#include <hypertopo/consensus.hpp>
#include <hypertopo/gossip.hpp>
#include <hypertopo/partition.hpp>
#include <hypertopo/recursion.hpp>
#include <hypertopo/topology.hpp>

#include "output.hpp"

namespace hypertopo::cli {

/// A topology named on the command line: a serialised file (--topology) or
/// a build request given as a file path or inline text (--spec).
struct InputSpec {
    std::string topology_file;
    std::string spec;
};

struct LoadedTopology {
    Topology topology;
    /// Present when the topology is a hypercube recursion.
    std::optional<RecursionSpec> recursion;
};

LoadedTopology load_input(const InputSpec& in);

/// "N=64 L=192 degree=6 classes=5000km:192"
std::string stats_line(const Topology& t);

void cmd_topo_build(RunContext& ctx, const InputSpec& in);
void cmd_topo_stats(RunContext& ctx, const InputSpec& in);

struct TablesOptions {
    int which = 1;
    std::size_t budget = 2000;
    bool reliability = true;
};
void cmd_tables(RunContext& ctx, const TablesOptions& opts);

struct AnalyzeOptions {
    std::optional<std::size_t> k;
    std::size_t budget = 2000;
    std::uint64_t enumeration_cap = 2'000'000;
    std::string mode = "hybrid";
    bool aggregate = false;
};
void cmd_analyze_partition(RunContext& ctx, const InputSpec& in, const AnalyzeOptions& opts);
void cmd_analyze_repair(RunContext& ctx, const InputSpec& in, const AnalyzeOptions& opts);

void cmd_gossip_run(RunContext& ctx, const InputSpec& in, GossipConfig config);

struct SweepFamily {
    std::string family = "hypercube";
    unsigned degree = 4;
};
Topology family_topology(const SweepFamily& family, std::size_t nodes);

void cmd_gossip_sweep(RunContext& ctx, const std::vector<std::size_t>& sizes,
                      const std::vector<std::string>& families, unsigned degree, std::size_t seeds,
                      GossipConfig config);

void cmd_consensus_run(RunContext& ctx, const InputSpec& in, ConsensusConfig config);
void cmd_consensus_sweep(RunContext& ctx, const std::vector<std::size_t>& sizes,
                         const std::vector<std::string>& families, unsigned degree,
                         std::optional<LeaderPolicy> star_policy, ConsensusConfig config);

}  // namespace hypertopo::cli
