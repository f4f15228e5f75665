#pragma once

#include <optional>
#include <vector>

#include "hypertopo/partition.hpp"
#include "hypertopo/recursion.hpp"

namespace hypertopo {

/// Partition tolerance p and average minimum repair time t of one domain,
/// with one child per node of the domain that recurses further.
struct DomainReliability {
    double p = 1.0;
    double t = 0.0;
    std::vector<DomainReliability> children;
};

struct AggregateResult {
    double p = 1.0;
    std::optional<double> t;
    /// Sum over recursion paths of p_{i_1}...p_{i_{m-1}} (1 - p_{i_m}).
    double failure_sum = 0.0;
    /// True if failure_sum exceeded 1 and p was clamped to 0.
    bool clamped = false;
};

/// Combines per-domain values along every recursion path: a domain fails
/// the whole network when all of its ancestors hold and it does not.
/// Throws spec_error for values outside p in [0, 1], t >= 0.
AggregateResult recursive_aggregate(const DomainReliability& root);

/// Per-domain (p, t) for a hypercube recursion: each level's domain
/// topology is analysed on its own with its own link class and quorum
/// floor(n/2)+1, then arranged into the recursion tree.
DomainReliability hierarchical_domains(const RecursionSpec& spec, const AnalysisOptions& options);

}  // namespace hypertopo
