#include "hypertopo/recursion.hpp"

#include <bit>
#include <cassert>
#include <map>
#include <set>
#include <string>

#include "hypertopo/error.hpp"
#include "hypertopo/union_find.hpp"

namespace hypertopo {

namespace {

std::uint32_t inverse_gray(std::uint32_t g) noexcept {
    std::uint32_t d = g;
    for (std::uint32_t shift = 1; shift < 32; shift <<= 1) d ^= d >> shift;
    return d;
}

std::uint64_t pow2(unsigned e) {
    if (e > 62) throw spec_error("closed form exceeds 64-bit range");
    return std::uint64_t{1} << e;
}

}  // namespace

LocalTopology LocalTopology::hypercube(unsigned dim, DigitOrder order) {
    if (dim > kMaxHypercubeDim) {
        throw resource_limit_error("domain dimension " + std::to_string(dim) + " exceeds limit");
    }
    LocalTopology t;
    t.size = std::uint32_t{1} << dim;
    for (std::uint32_t a = 0; a < t.size; ++a) {
        const std::uint32_t va = order == DigitOrder::gray ? gray_code(a) : a;
        for (unsigned bit = 0; bit < dim; ++bit) {
            const std::uint32_t vb = va ^ (std::uint32_t{1} << bit);
            const std::uint32_t b = order == DigitOrder::gray ? inverse_gray(vb) : vb;
            if (a < b) t.edges.emplace_back(a, b);
        }
    }
    return t;
}

LocalTopology LocalTopology::full_mesh(std::uint32_t size) {
    LocalTopology t;
    t.size = size;
    for (std::uint32_t a = 0; a < size; ++a) {
        for (std::uint32_t b = a + 1; b < size; ++b) t.edges.emplace_back(a, b);
    }
    return t;
}

LocalTopology LocalTopology::ring(std::uint32_t size) {
    LocalTopology t;
    t.size = size;
    if (size == 2) t.edges.emplace_back(0, 1);
    if (size > 2) {
        for (std::uint32_t a = 0; a < size; ++a) {
            const std::uint32_t b = (a + 1) % size;
            t.edges.emplace_back(std::min(a, b), std::max(a, b));
        }
    }
    return t;
}

void LocalTopology::validate() const {
    if (size == 0) throw spec_error("domain topology must have at least one node");
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    UnionFind uf(size);
    for (auto [a, b] : edges) {
        if (a >= size || b >= size) throw spec_error("domain edge endpoint out of range");
        if (a == b) throw spec_error("domain edge is a self loop");
        if (!seen.insert({std::min(a, b), std::max(a, b)}).second) {
            throw spec_error("duplicate domain edge");
        }
        uf.unite(a, b);
    }
    if (uf.largest() != size) throw spec_error("domain topology is not connected");
}

std::vector<unsigned> RecursionSpec::hypercube_dims() const {
    std::vector<unsigned> dims;
    for (const auto& level : levels) {
        const auto* h = std::get_if<HypercubeLevel>(&level);
        if (h == nullptr) return {};
        dims.push_back(h->dim);
    }
    return dims;
}

void RecursionSpec::validate() const {
    if (levels.empty()) throw spec_error("recursion spec needs at least one level");
    if (class_by_level.size() != levels.size()) {
        throw spec_error("class_by_level must name a class for each of the " +
                         std::to_string(levels.size()) + " levels");
    }
    for (std::size_t c = 0; c < classes.size(); ++c) {
        if (classes[c].class_id != c) throw spec_error("class ids must be 0..C-1 in order");
        classes[c].validate();
    }
    for (auto id : class_by_level) {
        if (id >= classes.size()) throw spec_error("class_by_level references unknown class");
    }
    for (const auto& level : levels) {
        if (const auto* h = std::get_if<HypercubeLevel>(&level)) {
            if (h->dim > kMaxHypercubeDim) {
                throw resource_limit_error("level dimension exceeds limit");
            }
        } else {
            if (mode != RecursionMode::asymmetric) {
                throw spec_error("explicit domain topologies need asymmetric mode");
            }
            const auto& ex = std::get<ExplicitLevel>(level);
            if (ex.domains.empty()) throw spec_error("explicit level lists no domains");
            for (const auto& d : ex.domains) d.validate();
        }
    }
    if (mode == RecursionMode::completely_symmetric) {
        const auto dims = hypercube_dims();
        for (auto d : dims) {
            if (d != dims.front()) {
                throw spec_error("completely symmetric recursion needs equal dims at every level");
            }
        }
    }
}

std::pair<std::vector<LinkClass>, std::vector<std::uint32_t>>
default_level_classes(std::size_t depth) {
    static constexpr double kDistances[] = {5000.0, 3000.0, 420.0};
    std::vector<LinkClass> classes;
    std::vector<std::uint32_t> by_level;
    for (std::size_t m = 0; m < depth; ++m) {
        const auto id = static_cast<std::uint32_t>(std::min<std::size_t>(m, 2));
        if (id >= classes.size()) classes.push_back(standard_link_class(kDistances[id], id));
        by_level.push_back(id);
    }
    return {std::move(classes), std::move(by_level)};
}

RecursionSpec RecursionSpec::completely_symmetric(unsigned dim, unsigned r) {
    if (r == 0) throw spec_error("recursion depth must be at least 1");
    RecursionSpec spec;
    spec.mode = RecursionMode::completely_symmetric;
    spec.levels.assign(r, HypercubeLevel{dim});
    std::tie(spec.classes, spec.class_by_level) = default_level_classes(r);
    return spec;
}

RecursionSpec RecursionSpec::semi_symmetric(std::vector<unsigned> dims) {
    if (dims.empty()) throw spec_error("recursion depth must be at least 1");
    RecursionSpec spec;
    spec.mode = RecursionMode::semi_symmetric;
    for (auto d : dims) spec.levels.emplace_back(HypercubeLevel{d});
    std::tie(spec.classes, spec.class_by_level) = default_level_classes(dims.size());
    return spec;
}

Topology build_recursive(const RecursionSpec& spec) {
    spec.validate();
    const std::size_t r = spec.depth();

    // Tree of partial node numbers. Depth 0 is a single virtual root; the
    // nodes at depth m carry m digits.
    struct TreeNode {
        std::uint32_t parent;
        std::uint32_t digit;
        std::uint32_t first_child = 0;
        std::uint32_t child_count = 0;
        std::uint32_t first_leaf = 0;
        std::uint32_t leaf_count = 0;
        std::uint32_t shape = 0;
    };
    std::vector<std::vector<TreeNode>> depth_nodes(r + 1);
    depth_nodes[0].push_back(TreeNode{0, 0});

    std::vector<LocalTopology> shared(r);
    for (std::size_t m = 0; m < r; ++m) {
        if (const auto* h = std::get_if<HypercubeLevel>(&spec.levels[m])) {
            shared[m] = LocalTopology::hypercube(h->dim, spec.digit_order);
        }
    }
    auto domain_at = [&](std::size_t m, std::size_t parent) -> const LocalTopology& {
        if (std::holds_alternative<HypercubeLevel>(spec.levels[m])) return shared[m];
        return std::get<ExplicitLevel>(spec.levels[m]).domains[parent];
    };

    for (std::size_t m = 0; m < r; ++m) {
        auto& parents = depth_nodes[m];
        if (const auto* ex = std::get_if<ExplicitLevel>(&spec.levels[m])) {
            if (ex->domains.size() != parents.size()) {
                throw spec_error("level " + std::to_string(m + 1) + " lists " +
                                 std::to_string(ex->domains.size()) + " domains but has " +
                                 std::to_string(parents.size()));
            }
        }
        std::size_t total = 0;
        for (std::size_t p = 0; p < parents.size(); ++p) total += domain_at(m, p).size;
        if (total > kMaxNodes) {
            throw resource_limit_error("recursive topology exceeds " + std::to_string(kMaxNodes) +
                                       " nodes");
        }
        auto& children = depth_nodes[m + 1];
        children.reserve(total);
        for (std::size_t p = 0; p < parents.size(); ++p) {
            const auto& dom = domain_at(m, p);
            parents[p].first_child = static_cast<std::uint32_t>(children.size());
            parents[p].child_count = dom.size;
            for (std::uint32_t d = 0; d < dom.size; ++d) {
                children.push_back(TreeNode{static_cast<std::uint32_t>(p), d});
            }
        }
    }

    // Leaf ranges and subtree shapes, bottom up. Two subtrees share a shape
    // id exactly when they hold the same set of digit suffixes.
    std::map<std::vector<std::uint32_t>, std::uint32_t> shape_ids;
    for (std::uint32_t i = 0; i < depth_nodes[r].size(); ++i) {
        depth_nodes[r][i].first_leaf = i;
        depth_nodes[r][i].leaf_count = 1;
        depth_nodes[r][i].shape = 0;
    }
    shape_ids[{}] = 0;
    for (std::size_t m = r; m-- > 0;) {
        for (auto& node : depth_nodes[m]) {
            const auto& kids = depth_nodes[m + 1];
            std::vector<std::uint32_t> key;
            key.reserve(node.child_count);
            node.first_leaf = kids[node.first_child].first_leaf;
            node.leaf_count = 0;
            for (std::uint32_t c = 0; c < node.child_count; ++c) {
                const auto& kid = kids[node.first_child + c];
                node.leaf_count += kid.leaf_count;
                key.push_back(kid.shape);
            }
            auto [it, inserted] =
                shape_ids.emplace(std::move(key), static_cast<std::uint32_t>(shape_ids.size()));
            node.shape = it->second;
        }
    }

    const auto& leaves = depth_nodes[r];
    std::vector<NodeId> nodes(leaves.size());
    for (std::uint32_t i = 0; i < leaves.size(); ++i) {
        nodes[i].flat = i;
        nodes[i].levels.resize(r);
        std::uint32_t idx = i;
        for (std::size_t m = r; m > 0; --m) {
            const auto& tn = depth_nodes[m][idx];
            nodes[i].levels[m - 1] = tn.digit;
            idx = tn.parent;
        }
    }

    std::vector<Link> links;
    for (std::size_t m = 0; m < r; ++m) {
        const auto level = static_cast<std::uint32_t>(m + 1);
        const auto class_id = spec.class_by_level[m];
        const auto& parents = depth_nodes[m];
        const auto& kids = depth_nodes[m + 1];
        for (std::size_t p = 0; p < parents.size(); ++p) {
            const auto& dom = domain_at(m, p);
            for (auto [a, b] : dom.edges) {
                const auto& da = kids[parents[p].first_child + a];
                const auto& db = kids[parents[p].first_child + b];
                if (da.shape != db.shape) {
                    throw construction_error(
                        "cannot interconnect domains " + std::to_string(da.first_leaf) + " and " +
                        std::to_string(db.first_leaf) + " at level " + std::to_string(level + 1) +
                        ": their node suffixes differ");
                }
                for (std::uint32_t t = 0; t < da.leaf_count; ++t) {
                    NodeIndex u = da.first_leaf + t;
                    NodeIndex v = db.first_leaf + t;
                    if (u > v) std::swap(u, v);
                    links.push_back(Link{u, v, class_id, level, LinkState::working});
                }
            }
        }
    }

    TopologyKind kind{TopologyType::recursive, {}, spec.mode};
    for (auto d : spec.hypercube_dims()) kind.params.push_back(d);
    Topology topo(std::move(kind), std::move(nodes), std::move(links), spec.classes);
    if (!topo.is_connected()) throw construction_error("recursive topology is disconnected");
    return topo;
}

ClosedFormCounts closed_form_link_count(const RecursionSpec& spec) {
    if (spec.mode == RecursionMode::asymmetric) {
        throw spec_error("no closed-form link count for asymmetric recursion");
    }
    const auto dims = spec.hypercube_dims();
    if (dims.empty()) throw spec_error("closed form needs hypercube levels");

    // Level-by-level recurrence: a new level multiplies every existing link
    // by the new domain size and adds 2^(d-1)*d intradomain links for each
    // of the 2^(previous dims) domains.
    ClosedFormCounts out;
    unsigned prefix = 0;
    for (auto d : dims) {
        for (auto& l : out.links_by_level) l *= pow2(d);
        const std::uint64_t intra = d == 0 ? 0 : pow2(d - 1) * d;
        out.links_by_level.push_back(intra * pow2(prefix));
        prefix += d;
    }
    out.nodes = pow2(prefix);
    out.links = prefix == 0 ? 0 : pow2(prefix - 1) * prefix;

    std::uint64_t sum = 0;
    for (auto l : out.links_by_level) sum += l;
    assert(sum == out.links);
    (void)sum;
    return out;
}

}  // namespace hypertopo
