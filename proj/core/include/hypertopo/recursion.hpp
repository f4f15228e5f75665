#pragma once

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "hypertopo/link_class.hpp"
#include "hypertopo/topology.hpp"

namespace hypertopo {

/// How hypercube vertices map onto the local digits of a domain.
///
/// `gray`: digit d is hypercube vertex gray(d), so consecutive digits are
/// neighbours and a 2-cube domain reads 0-1-2-3-0. `binary`: digit d is
/// vertex d and links follow the Hamming rule on the digits directly.
enum class DigitOrder : std::uint8_t { gray, binary };

/// Topology of one domain over local digits 0..size-1.
struct LocalTopology {
    std::uint32_t size = 1;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;

    static LocalTopology hypercube(unsigned dim, DigitOrder order);
    static LocalTopology full_mesh(std::uint32_t size);
    static LocalTopology ring(std::uint32_t size);

    /// Throws spec_error on out-of-range, self or duplicate edges, or a
    /// disconnected domain.
    void validate() const;
};

/// Every domain at this level is a hypercube of the given dimension.
struct HypercubeLevel {
    unsigned dim = 0;
};

/// One explicit topology per domain at this level, indexed by the flat
/// order of the parent nodes. Only allowed in asymmetric mode.
struct ExplicitLevel {
    std::vector<LocalTopology> domains;
};

using RecursionLevel = std::variant<HypercubeLevel, ExplicitLevel>;

/// Per-level description driving recursive construction. Level m (1-based)
/// is `levels[m-1]`; links created by level m get
/// `classes[class_by_level[m-1]]`.
struct RecursionSpec {
    RecursionMode mode = RecursionMode::completely_symmetric;
    std::vector<RecursionLevel> levels;
    std::vector<LinkClass> classes;
    std::vector<std::uint32_t> class_by_level;
    DigitOrder digit_order = DigitOrder::gray;

    std::size_t depth() const noexcept { return levels.size(); }

    /// Per-level hypercube dims; empty if any level is explicit.
    std::vector<unsigned> hypercube_dims() const;

    void validate() const;

    /// r levels of dim-cubes with the default distance classes.
    static RecursionSpec completely_symmetric(unsigned dim, unsigned r);
    static RecursionSpec semi_symmetric(std::vector<unsigned> dims);
};

/// Default class assignment: level 1 uses 5000 km links, level 2 3000 km,
/// level 3 and deeper 420 km. Returns (classes, class_by_level).
std::pair<std::vector<LinkClass>, std::vector<std::uint32_t>>
default_level_classes(std::size_t depth);

/// Two-step construction: every node of level m-1 becomes a domain holding
/// the level-m topology (the node number gains one digit), then for every
/// link (A, B) of a level-m domain, each node of A is linked to the node of
/// B with the same local suffix.
Topology build_recursive(const RecursionSpec& spec);

struct ClosedFormCounts {
    std::uint64_t nodes = 0;
    std::uint64_t links = 0;
    /// Links contributed by each recursion level, outermost first.
    std::vector<std::uint64_t> links_by_level;
};

/// N = 2^(sum dims) and L = 2^(sum dims - 1) * sum dims, with the per-level
/// split obtained from the level-by-level recurrence. Throws spec_error for
/// asymmetric specs.
ClosedFormCounts closed_form_link_count(const RecursionSpec& spec);

/// Gray code of d.
constexpr std::uint32_t gray_code(std::uint32_t d) noexcept { return d ^ (d >> 1); }

}  // namespace hypertopo
