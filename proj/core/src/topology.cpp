#include "hypertopo/topology.hpp"

#include <algorithm>
#include <bit>
#include <queue>
#include <unordered_set>

#include "hypertopo/error.hpp"
#include "hypertopo/union_find.hpp"

namespace hypertopo {

namespace {

std::uint64_t pair_key(NodeIndex a, NodeIndex b) {
    if (a > b) std::swap(a, b);
    return (std::uint64_t{a} << 32) | b;
}

std::vector<NodeId> flat_nodes(std::size_t n) {
    std::vector<NodeId> nodes(n);
    for (std::size_t i = 0; i < n; ++i) {
        nodes[i].levels = {static_cast<std::uint32_t>(i)};
        nodes[i].flat = static_cast<NodeIndex>(i);
    }
    return nodes;
}

Link make_link(NodeIndex a, NodeIndex b, std::uint32_t class_id = 0,
               std::uint32_t level = 1) {
    if (a > b) std::swap(a, b);
    return Link{a, b, class_id, level, LinkState::working};
}

LinkClass default_class() { return standard_link_class(5000.0, 0); }

LinkClass with_id(LinkClass c, std::uint32_t id) {
    c.class_id = id;
    return c;
}

}  // namespace

std::string NodeId::label() const {
    bool wide = false;
    for (auto d : levels) wide = wide || d > 9;
    std::string out;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (wide && i > 0) out += '.';
        out += std::to_string(levels[i]);
    }
    return out;
}

std::string to_string(TopologyType type) {
    switch (type) {
        case TopologyType::complete_hypercube: return "complete_hypercube";
        case TopologyType::incomplete_hypercube: return "incomplete_hypercube";
        case TopologyType::recursive: return "recursive";
        case TopologyType::rooted_tree: return "rooted_tree";
        case TopologyType::ring_lattice: return "ring_lattice";
        case TopologyType::star: return "star";
        case TopologyType::custom: return "custom";
    }
    return "custom";
}

std::optional<TopologyType> topology_type_from_string(std::string_view s) {
    for (auto t : {TopologyType::complete_hypercube, TopologyType::incomplete_hypercube,
                   TopologyType::recursive, TopologyType::rooted_tree,
                   TopologyType::ring_lattice, TopologyType::star, TopologyType::custom}) {
        if (to_string(t) == s) return t;
    }
    return std::nullopt;
}

std::string to_string(RecursionMode mode) {
    switch (mode) {
        case RecursionMode::completely_symmetric: return "symmetric";
        case RecursionMode::semi_symmetric: return "semi";
        case RecursionMode::asymmetric: return "asymmetric";
    }
    return "symmetric";
}

std::optional<RecursionMode> recursion_mode_from_string(std::string_view s) {
    if (s == "symmetric" || s == "completely_symmetric") {
        return RecursionMode::completely_symmetric;
    }
    if (s == "semi" || s == "semi_symmetric") return RecursionMode::semi_symmetric;
    if (s == "asymmetric") return RecursionMode::asymmetric;
    return std::nullopt;
}

std::string TopologyKind::describe() const {
    std::string out = to_string(type);
    if (mode) out += ":" + to_string(*mode);
    if (!params.empty()) {
        out += '(';
        for (std::size_t i = 0; i < params.size(); ++i) {
            if (i > 0) out += type == TopologyType::recursive ? "-" : ",";
            out += std::to_string(params[i]);
        }
        out += ')';
    }
    return out;
}

Topology::Topology(TopologyKind kind, std::vector<NodeId> nodes,
                   std::vector<Link> links, std::vector<LinkClass> classes)
    : kind_(std::move(kind)),
      nodes_(std::move(nodes)),
      links_(std::move(links)),
      classes_(std::move(classes)) {
    const std::size_t n = nodes_.size();
    if (n == 0) throw construction_error("topology must have at least one node");
    for (std::size_t i = 0; i < n; ++i) {
        if (nodes_[i].flat != i) {
            throw construction_error("node flat indices must be 0..N-1 in order");
        }
        if (nodes_[i].levels.empty()) {
            throw construction_error("node " + std::to_string(i) + " has no level digits");
        }
    }
    for (std::size_t c = 0; c < classes_.size(); ++c) {
        if (classes_[c].class_id != c) {
            throw construction_error("class table ids must be 0..C-1 in order");
        }
        classes_[c].validate();
    }

    std::unordered_set<std::uint64_t> seen;
    seen.reserve(links_.size() * 2);
    std::vector<std::size_t> degree(n, 0);
    for (auto& l : links_) {
        if (l.u >= n || l.v >= n) throw construction_error("dangling link endpoint");
        if (l.u == l.v) throw construction_error("self loop at node " + std::to_string(l.u));
        if (l.u > l.v) std::swap(l.u, l.v);
        if (l.class_id >= classes_.size()) {
            throw construction_error("link references unknown class " +
                                     std::to_string(l.class_id));
        }
        if (!seen.insert(pair_key(l.u, l.v)).second) {
            throw construction_error("duplicate link " + std::to_string(l.u) + "-" +
                                     std::to_string(l.v));
        }
        ++degree[l.u];
        ++degree[l.v];
    }

    offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] = offsets_[i] + degree[i];
    adjacency_.resize(offsets_[n]);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t li = 0; li < links_.size(); ++li) {
        const auto& l = links_[li];
        adjacency_[fill[l.u]++] = {l.v, static_cast<LinkIndex>(li)};
        adjacency_[fill[l.v]++] = {l.u, static_cast<LinkIndex>(li)};
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
                  adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]),
                  [](const Adjacent& a, const Adjacent& b) { return a.node < b.node; });
    }
}

const LinkClass& Topology::class_of(LinkIndex i) const {
    return classes_.at(links_.at(i).class_id);
}

std::size_t Topology::min_degree() const noexcept {
    std::size_t best = degree(0);
    for (NodeIndex i = 1; i < nodes_.size(); ++i) best = std::min(best, degree(i));
    return best;
}

std::size_t Topology::max_degree() const noexcept {
    std::size_t best = 0;
    for (NodeIndex i = 0; i < nodes_.size(); ++i) best = std::max(best, degree(i));
    return best;
}

std::optional<LinkIndex> Topology::find_link(NodeIndex a, NodeIndex b) const {
    if (a >= nodes_.size() || b >= nodes_.size()) return std::nullopt;
    auto adj = neighbors(a);
    auto it = std::lower_bound(adj.begin(), adj.end(), b,
                               [](const Adjacent& x, NodeIndex v) { return x.node < v; });
    if (it != adj.end() && it->node == b) return it->link;
    return std::nullopt;
}

bool Topology::is_connected() const {
    UnionFind uf(nodes_.size());
    for (const auto& l : links_) {
        if (l.state == LinkState::working) uf.unite(l.u, l.v);
    }
    return uf.largest() == nodes_.size();
}

// ---------------------------------------------------------------------------

Topology build_complete_hypercube(unsigned dim) {
    return build_complete_hypercube(dim, default_class());
}

Topology build_complete_hypercube(unsigned dim, const LinkClass& link_class) {
    if (dim > kMaxHypercubeDim) {
        throw resource_limit_error("hypercube dimension " + std::to_string(dim) +
                                   " exceeds limit " + std::to_string(kMaxHypercubeDim));
    }
    const std::size_t n = std::size_t{1} << dim;
    std::vector<Link> links;
    links.reserve(dim == 0 ? 0 : (n / 2) * dim);
    for (NodeIndex u = 0; u < n; ++u) {
        for (unsigned b = 0; b < dim; ++b) {
            const NodeIndex v = u ^ (NodeIndex{1} << b);
            if (u < v) links.push_back(make_link(u, v));
        }
    }
    return Topology(TopologyKind{TopologyType::complete_hypercube, {dim}, std::nullopt},
                    flat_nodes(n), std::move(links), {with_id(link_class, 0)});
}

Topology build_incomplete_hypercube(
    unsigned dim, std::span<const NodeIndex> present_nodes,
    std::span<const std::pair<NodeIndex, NodeIndex>> removed_links) {
    if (dim > kMaxHypercubeDim) {
        throw resource_limit_error("hypercube dimension " + std::to_string(dim) +
                                   " exceeds limit " + std::to_string(kMaxHypercubeDim));
    }
    const std::size_t cube = std::size_t{1} << dim;
    std::vector<NodeIndex> present(present_nodes.begin(), present_nodes.end());
    std::sort(present.begin(), present.end());
    present.erase(std::unique(present.begin(), present.end()), present.end());
    if (present.empty()) throw spec_error("incomplete hypercube needs at least one node");
    if (present.back() >= cube) {
        throw spec_error("node " + std::to_string(present.back()) + " outside the " +
                         std::to_string(dim) + "-cube");
    }

    std::unordered_set<std::uint64_t> removed;
    for (auto [a, b] : removed_links) {
        if (a >= cube || b >= cube || std::popcount(a ^ b) != 1) {
            throw spec_error("removed link " + std::to_string(a) + "-" + std::to_string(b) +
                             " is not a hypercube edge");
        }
        removed.insert(pair_key(a, b));
    }

    // Dense relabelling keeps the original cube ID as the node's level digit.
    std::vector<std::int64_t> dense(cube, -1);
    std::vector<NodeId> nodes(present.size());
    for (std::size_t i = 0; i < present.size(); ++i) {
        dense[present[i]] = static_cast<std::int64_t>(i);
        nodes[i].levels = {present[i]};
        nodes[i].flat = static_cast<NodeIndex>(i);
    }

    std::vector<Link> links;
    for (NodeIndex u : present) {
        for (unsigned b = 0; b < dim; ++b) {
            const NodeIndex v = u ^ (NodeIndex{1} << b);
            if (v < u || dense[v] < 0 || removed.contains(pair_key(u, v))) continue;
            links.push_back(make_link(static_cast<NodeIndex>(dense[u]),
                                      static_cast<NodeIndex>(dense[v])));
        }
    }

    Topology topo(TopologyKind{TopologyType::incomplete_hypercube, {dim}, std::nullopt},
                  std::move(nodes), std::move(links), {default_class()});
    if (!topo.is_connected()) {
        throw construction_error("incomplete " + std::to_string(dim) +
                                 "-cube is disconnected after removals");
    }
    return topo;
}

Topology build_rooted_tree(std::size_t n, unsigned degree) {
    return build_rooted_tree(n, degree, default_class());
}

Topology build_rooted_tree(std::size_t n, unsigned degree, const LinkClass& link_class) {
    if (n < 1) throw spec_error("rooted tree needs at least one node");
    if (degree < 2) throw spec_error("rooted tree degree must be at least 2");
    if (n > kMaxNodes) throw resource_limit_error("rooted tree too large");
    std::vector<Link> links;
    links.reserve(n - 1);
    // Children are assigned in breadth-first order: node p's children are
    // the next unassigned IDs.
    std::size_t next = 1;
    for (std::size_t parent = 0; next < n; ++parent) {
        const std::size_t fanout = parent == 0 ? degree : degree - 1;
        for (std::size_t c = 0; c < fanout && next < n; ++c, ++next) {
            links.push_back(make_link(static_cast<NodeIndex>(parent),
                                      static_cast<NodeIndex>(next)));
        }
    }
    return Topology(TopologyKind{TopologyType::rooted_tree,
                                 {static_cast<std::int64_t>(n), degree}, std::nullopt},
                    flat_nodes(n), std::move(links), {with_id(link_class, 0)});
}

Topology build_ring_lattice(std::size_t n, unsigned degree) {
    return build_ring_lattice(n, degree, default_class());
}

Topology build_ring_lattice(std::size_t n, unsigned degree, const LinkClass& link_class) {
    if (degree % 2 != 0) throw spec_error("ring lattice degree must be even");
    if (degree < 2 || degree >= n) throw spec_error("ring lattice needs 2 <= degree < n");
    if (n > kMaxNodes) throw resource_limit_error("ring lattice too large");
    std::vector<Link> links;
    links.reserve(n * degree / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t d = 1; d <= degree / 2; ++d) {
            links.push_back(make_link(static_cast<NodeIndex>(i),
                                      static_cast<NodeIndex>((i + d) % n)));
        }
    }
    return Topology(TopologyKind{TopologyType::ring_lattice,
                                 {static_cast<std::int64_t>(n), degree}, std::nullopt},
                    flat_nodes(n), std::move(links), {with_id(link_class, 0)});
}

Topology build_star(std::size_t n) { return build_star(n, default_class()); }

Topology build_star(std::size_t n, const LinkClass& link_class) {
    if (n < 2) throw spec_error("star needs at least two nodes");
    if (n > kMaxNodes) throw resource_limit_error("star too large");
    std::vector<Link> links;
    links.reserve(n - 1);
    for (std::size_t i = 1; i < n; ++i) links.push_back(make_link(0, static_cast<NodeIndex>(i)));
    return Topology(TopologyKind{TopologyType::star, {static_cast<std::int64_t>(n)}, std::nullopt},
                    flat_nodes(n), std::move(links), {with_id(link_class, 0)});
}

std::vector<std::vector<NodeIndex>> connected_components(
    const Topology& topology, std::span<const LinkIndex> failed_links) {
    std::vector<char> failed(topology.link_count(), 0);
    for (auto li : failed_links) {
        if (li >= topology.link_count()) {
            throw spec_error("failed link index " + std::to_string(li) + " out of range");
        }
        failed[li] = 1;
    }
    UnionFind uf(topology.node_count());
    const auto links = topology.links();
    for (std::size_t i = 0; i < links.size(); ++i) {
        if (!failed[i] && links[i].state == LinkState::working) uf.unite(links[i].u, links[i].v);
    }
    std::map<std::uint32_t, std::vector<NodeIndex>> by_root;
    for (NodeIndex v = 0; v < topology.node_count(); ++v) by_root[uf.find(v)].push_back(v);
    std::vector<std::vector<NodeIndex>> out;
    out.reserve(by_root.size());
    for (auto& [root, members] : by_root) out.push_back(std::move(members));
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a.front() < b.front();
    });
    return out;
}

std::map<std::uint32_t, std::size_t> link_class_census(const Topology& topology) {
    std::map<std::uint32_t, std::size_t> out;
    for (const auto& l : topology.links()) ++out[l.class_id];
    return out;
}

std::map<std::uint32_t, std::size_t> link_level_census(const Topology& topology) {
    std::map<std::uint32_t, std::size_t> out;
    for (const auto& l : topology.links()) ++out[l.level];
    return out;
}

}  // namespace hypertopo
