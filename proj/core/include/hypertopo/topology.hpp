#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hypertopo/link_class.hpp"

namespace hypertopo {

using NodeIndex = std::uint32_t;
using LinkIndex = std::uint32_t;

/// Hierarchical node number. `levels[0]` is the most significant digit
/// (recursion level 1); `flat` is the dense index in [0, N).
struct NodeId {
    std::vector<std::uint32_t> levels;
    NodeIndex flat = 0;

    /// Digits spliced together, e.g. "03" for levels {0, 3}. Digits wider
    /// than one character are dot-separated.
    std::string label() const;

    friend bool operator==(const NodeId&, const NodeId&) = default;
};

enum class LinkState : std::uint8_t { working, invalid };

/// Undirected link with u < v. `level` is the recursion level whose
/// interconnection step created the link (1 for flat topologies).
struct Link {
    NodeIndex u = 0;
    NodeIndex v = 0;
    std::uint32_t class_id = 0;
    std::uint32_t level = 1;
    LinkState state = LinkState::working;

    friend bool operator==(const Link&, const Link&) = default;
};

enum class TopologyType : std::uint8_t {
    complete_hypercube,
    incomplete_hypercube,
    recursive,
    rooted_tree,
    ring_lattice,
    star,
    custom,
};

enum class RecursionMode : std::uint8_t {
    completely_symmetric,
    semi_symmetric,
    asymmetric,
};

/// Tag describing how a topology was produced. `params` holds the
/// builder arguments: {dim} for hypercubes, per-level dims for recursive
/// hypercube specs, {n, degree} for trees and rings, {n} for stars.
struct TopologyKind {
    TopologyType type = TopologyType::custom;
    std::vector<std::int64_t> params;
    std::optional<RecursionMode> mode;

    std::string describe() const;

    friend bool operator==(const TopologyKind&, const TopologyKind&) = default;
};

std::string to_string(TopologyType type);
std::optional<TopologyType> topology_type_from_string(std::string_view s);
std::string to_string(RecursionMode mode);
std::optional<RecursionMode> recursion_mode_from_string(std::string_view s);

struct Adjacent {
    NodeIndex node;
    LinkIndex link;
};

/// Immutable physical topology: labelled nodes, typed undirected links and
/// the link class table. The constructor checks structural invariants
/// (bijective flat indices, no self loops, no parallel links, valid class
/// references) and builds a CSR adjacency.
class Topology {
public:
    Topology(TopologyKind kind, std::vector<NodeId> nodes,
             std::vector<Link> links, std::vector<LinkClass> classes);

    const TopologyKind& kind() const noexcept { return kind_; }
    std::size_t node_count() const noexcept { return nodes_.size(); }
    std::size_t link_count() const noexcept { return links_.size(); }

    std::span<const NodeId> nodes() const noexcept { return nodes_; }
    std::span<const Link> links() const noexcept { return links_; }
    std::span<const LinkClass> classes() const noexcept { return classes_; }

    const NodeId& node(NodeIndex i) const { return nodes_.at(i); }
    const Link& link(LinkIndex i) const { return links_.at(i); }
    const LinkClass& class_of(LinkIndex i) const;

    std::span<const Adjacent> neighbors(NodeIndex n) const noexcept {
        return {adjacency_.data() + offsets_[n],
                adjacency_.data() + offsets_[n + 1]};
    }
    std::size_t degree(NodeIndex n) const noexcept {
        return offsets_[n + 1] - offsets_[n];
    }
    std::size_t min_degree() const noexcept;
    std::size_t max_degree() const noexcept;

    std::optional<LinkIndex> find_link(NodeIndex a, NodeIndex b) const;

    /// Connectivity of the graph formed by Working links.
    bool is_connected() const;

    friend bool operator==(const Topology& a, const Topology& b) {
        return a.kind_ == b.kind_ && a.nodes_ == b.nodes_ &&
               a.links_ == b.links_ && a.classes_ == b.classes_;
    }

private:
    TopologyKind kind_;
    std::vector<NodeId> nodes_;
    std::vector<Link> links_;
    std::vector<LinkClass> classes_;
    std::vector<std::size_t> offsets_;
    std::vector<Adjacent> adjacency_;
};

/// Largest supported hypercube dimension and node count.
inline constexpr unsigned kMaxHypercubeDim = 20;
inline constexpr std::size_t kMaxNodes = std::size_t{1} << kMaxHypercubeDim;

/// All 2^dim IDs linked at Hamming distance 1. Defaults to a single
/// 5000 km class.
Topology build_complete_hypercube(unsigned dim);
Topology build_complete_hypercube(unsigned dim, const LinkClass& link_class);

/// Induced subgraph of the dim-cube on `present_nodes` minus
/// `removed_links`. Throws construction_error if the result is
/// disconnected, spec_error for IDs outside the cube or non-edges.
Topology build_incomplete_hypercube(
    unsigned dim, std::span<const NodeIndex> present_nodes,
    std::span<const std::pair<NodeIndex, NodeIndex>> removed_links);

/// Breadth-first rooted tree where every internal node has `degree`
/// incident links: the root has `degree` children, others degree-1.
Topology build_rooted_tree(std::size_t n, unsigned degree);
Topology build_rooted_tree(std::size_t n, unsigned degree,
                           const LinkClass& link_class);

/// Node i linked to i+1 .. i+degree/2 (mod n). `degree` must be even.
Topology build_ring_lattice(std::size_t n, unsigned degree);
Topology build_ring_lattice(std::size_t n, unsigned degree,
                            const LinkClass& link_class);

/// Node 0 is the hub.
Topology build_star(std::size_t n);
Topology build_star(std::size_t n, const LinkClass& link_class);

/// Components of the graph with `failed_links` (and any Invalid links)
/// removed, ordered by size descending then smallest member. Members are
/// sorted ascending.
std::vector<std::vector<NodeIndex>> connected_components(
    const Topology& topology, std::span<const LinkIndex> failed_links = {});

/// Link count per class id. Counts sum to L.
std::map<std::uint32_t, std::size_t> link_class_census(const Topology& topology);

/// Link count per recursion level (1-based).
std::map<std::uint32_t, std::size_t> link_level_census(const Topology& topology);

}  // namespace hypertopo
