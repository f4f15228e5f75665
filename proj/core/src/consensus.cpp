#include "hypertopo/consensus.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <random>

#include "hypertopo/error.hpp"
#include "hypertopo/stats.hpp"

namespace hypertopo {

namespace {

struct BfsTree {
    std::vector<NodeIndex> order;
    std::vector<std::vector<NodeIndex>> children;
    std::vector<std::size_t> subtree;
};

BfsTree bfs_tree(const Topology& topology, NodeIndex root) {
    const std::size_t n = topology.node_count();
    if (root >= n) throw spec_error("source node out of range");
    BfsTree t;
    t.children.resize(n);
    std::vector<char> seen(n, 0);
    std::queue<NodeIndex> q;
    q.push(root);
    seen[root] = 1;
    while (!q.empty()) {
        const NodeIndex u = q.front();
        q.pop();
        t.order.push_back(u);
        for (const auto& a : topology.neighbors(u)) {
            if (topology.link(a.link).state != LinkState::working || seen[a.node]) continue;
            seen[a.node] = 1;
            t.children[u].push_back(a.node);
            q.push(a.node);
        }
    }
    if (t.order.size() != n) throw construction_error("topology is disconnected");
    t.subtree.assign(n, 1);
    for (std::size_t i = t.order.size(); i-- > 0;) {
        const NodeIndex u = t.order[i];
        for (auto c : t.children[u]) t.subtree[u] += t.subtree[c];
    }
    return t;
}

double transfer_time(std::uint64_t bytes, const ConsensusConfig& config) {
    return static_cast<double>(bytes) * 8.0 / config.link_bandwidth + config.link_latency;
}

double broadcast_over(const BfsTree& tree, std::uint64_t payload, const ConsensusConfig& config) {
    const double hop = transfer_time(payload, config);
    std::vector<double> recv(tree.children.size(), 0.0);
    double last = 0.0;
    for (auto u : tree.order) {
        const auto& kids = tree.children[u];
        for (std::size_t j = 0; j < kids.size(); ++j) {
            recv[kids[j]] = recv[u] + static_cast<double>(j + 1) * hop;
            last = std::max(last, recv[kids[j]]);
        }
    }
    return last;
}

double collect_over(const BfsTree& tree, const ConsensusConfig& config) {
    std::vector<double> ready(tree.children.size(), 0.0);
    std::vector<std::pair<double, NodeIndex>> arrivals;
    for (std::size_t i = tree.order.size(); i-- > 0;) {
        const NodeIndex u = tree.order[i];
        arrivals.clear();
        for (auto c : tree.children[u]) arrivals.emplace_back(ready[c], c);
        std::sort(arrivals.begin(), arrivals.end());
        double busy = 0.0;
        for (const auto& [t, c] : arrivals) {
            busy = std::max(busy, t) +
                   transfer_time(std::uint64_t{tree.subtree[c]} * config.vote_bytes, config);
        }
        ready[u] = busy;
    }
    return ready[tree.order.front()];
}

NodeIndex hub_of(const Topology& topology) {
    NodeIndex best = 0;
    for (NodeIndex v = 1; v < topology.node_count(); ++v) {
        if (topology.degree(v) > topology.degree(best)) best = v;
    }
    return best;
}

}  // namespace

const char* to_string(LeaderPolicy policy) noexcept {
    switch (policy) {
        case LeaderPolicy::random_rotation: return "random";
        case LeaderPolicy::fixed_hub: return "fixed-hub";
        case LeaderPolicy::rotate_every: return "rotate";
    }
    return "random";
}

std::optional<LeaderPolicy> leader_policy_from_string(std::string_view s) {
    if (s == "random") return LeaderPolicy::random_rotation;
    if (s == "fixed-hub" || s == "hub") return LeaderPolicy::fixed_hub;
    if (s == "rotate") return LeaderPolicy::rotate_every;
    return std::nullopt;
}

void ConsensusConfig::validate() const {
    if (!(tx_rate > 0.0) || tx_size == 0 || block_cap == 0 || !(link_bandwidth > 0.0)) {
        throw spec_error("transaction rate, size, block capacity and bandwidth must be positive");
    }
    if (!(link_latency >= 0.0)) throw spec_error("link latency must be non-negative");
    if (std::uint64_t{block_cap} * tx_size > max_block_bytes) {
        throw spec_error("block_cap * tx_size exceeds max_block_bytes");
    }
    if (vote_bytes == 0) throw spec_error("vote size must be positive");
    if (rotate_period == 0) throw spec_error("rotation period must be positive");
    if (rounds == 0) throw spec_error("need at least one round");
}

double broadcast_time(const Topology& topology, NodeIndex source, std::uint64_t payload_bytes,
                      const ConsensusConfig& config) {
    config.validate();
    return broadcast_over(bfs_tree(topology, source), payload_bytes, config);
}

double vote_collection_time(const Topology& topology, NodeIndex leader,
                            const ConsensusConfig& config) {
    config.validate();
    return collect_over(bfs_tree(topology, leader), config);
}

ThroughputReport run_consensus(const Topology& topology, const ConsensusConfig& config) {
    config.validate();
    const std::size_t n = topology.node_count();
    if (n < 4) throw spec_error("consensus needs at least 4 nodes");

    std::mt19937_64 rng(config.seed);
    std::uniform_int_distribution<NodeIndex> any_node(0, static_cast<NodeIndex>(n - 1));
    std::map<NodeIndex, BfsTree> trees;
    auto tree_for = [&](NodeIndex leader) -> const BfsTree& {
        auto it = trees.find(leader);
        if (it == trees.end()) it = trees.emplace(leader, bfs_tree(topology, leader)).first;
        return it->second;
    };

    ThroughputReport report;
    report.rounds.reserve(config.rounds);
    double pending = 0.0;
    NodeIndex leader = hub_of(topology);
    std::vector<double> per_round;
    per_round.reserve(config.rounds);
    for (std::size_t r = 0; r < config.rounds; ++r) {
        switch (config.leader_policy) {
            case LeaderPolicy::random_rotation:
                leader = any_node(rng);
                break;
            case LeaderPolicy::rotate_every:
                if (r % config.rotate_period == 0) leader = any_node(rng);
                break;
            case LeaderPolicy::fixed_hub:
                break;
        }
        const auto block = static_cast<std::uint64_t>(
            std::min(static_cast<double>(config.block_cap), std::floor(pending)));
        pending -= static_cast<double>(block);
        const auto& tree = tree_for(leader);
        const double round_time =
            broadcast_over(tree, block * config.tx_size, config) + collect_over(tree, config);
        pending += config.tx_rate * round_time;
        report.elapsed_s += round_time;
        report.committed_total += block;
        const double tps = static_cast<double>(block) / round_time;
        per_round.push_back(tps);
        report.rounds.push_back(RoundRecord{r, leader, round_time, block, tps});
    }
    report.throughput_tps = static_cast<double>(report.committed_total) / report.elapsed_s;
    report.tps_mean = mean(per_round);
    report.tps_std = stddev(per_round);
    return report;
}

ConsensusSweep sweep_consensus(std::span<const NamedTopology> entries, const ConsensusConfig& config) {
    ConsensusSweep sweep;
    std::vector<std::string> order;
    std::map<std::string, std::vector<double>> by_family;
    for (const auto& e : entries) {
        if (e.topology == nullptr) throw spec_error("sweep entry without topology");
        ConsensusConfig c = config;
        if (e.policy) c.leader_policy = *e.policy;
        const auto rep = run_consensus(*e.topology, c);
        sweep.rows.push_back(ConsensusSweepRow{e.family, e.topology->node_count(), rep.throughput_tps,
                                               rep.elapsed_s / static_cast<double>(rep.rounds.size())});
        if (!by_family.contains(e.family)) order.push_back(e.family);
        by_family[e.family].push_back(rep.throughput_tps);
    }
    for (const auto& f : order) {
        const auto& v = by_family[f];
        sweep.families.push_back(ConsensusFamilySummary{f, mean(v), stddev(v)});
    }
    return sweep;
}

}  // namespace hypertopo
