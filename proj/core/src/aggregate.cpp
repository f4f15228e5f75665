#include "hypertopo/aggregate.hpp"

#include <cmath>
#include <string>

#include "hypertopo/error.hpp"

namespace hypertopo {

namespace {

void accumulate(const DomainReliability& d, double ancestors, double& failure, double& repair) {
    if (!(d.p >= 0.0 && d.p <= 1.0)) {
        throw spec_error("domain partition tolerance must lie in [0, 1]");
    }
    if (!(d.t >= 0.0) || !std::isfinite(d.t)) {
        throw spec_error("domain repair time must be finite and non-negative");
    }
    const double term = ancestors * (1.0 - d.p);
    failure += term;
    repair += term * d.t;
    for (const auto& child : d.children) accumulate(child, ancestors * d.p, failure, repair);
}

DomainReliability expand(const std::vector<DomainReliability>& per_level,
                         const std::vector<std::uint32_t>& sizes, std::size_t level) {
    DomainReliability d = per_level[level];
    if (level + 1 < per_level.size()) {
        d.children.assign(sizes[level], expand(per_level, sizes, level + 1));
    }
    return d;
}

}  // namespace

AggregateResult recursive_aggregate(const DomainReliability& root) {
    double failure = 0.0;
    double repair = 0.0;
    accumulate(root, 1.0, failure, repair);
    AggregateResult out;
    out.failure_sum = failure;
    if (failure > 1.0) {
        out.clamped = true;
        failure = 1.0;
    }
    out.p = 1.0 - failure;
    if (out.failure_sum > 0.0) out.t = repair / out.failure_sum;
    return out;
}

DomainReliability hierarchical_domains(const RecursionSpec& spec, const AnalysisOptions& options) {
    spec.validate();
    const auto dims = spec.hypercube_dims();
    if (dims.empty()) throw spec_error("hierarchical aggregation needs hypercube levels");

    std::vector<DomainReliability> per_level;
    std::vector<std::uint32_t> sizes;
    for (std::size_t m = 0; m < dims.size(); ++m) {
        const auto& cls = spec.classes.at(spec.class_by_level[m]);
        const auto domain = build_complete_hypercube(dims[m], cls);
        const auto report = partition_tolerance(domain, default_quorum(domain.node_count()), options);
        per_level.push_back(DomainReliability{report.p, report.t.value_or(0.0), {}});
        sizes.push_back(static_cast<std::uint32_t>(domain.node_count()));
    }
    std::size_t total = 1;
    for (auto s : sizes) {
        total *= s;
        if (total > kMaxNodes) throw resource_limit_error("recursion tree too large");
    }
    return expand(per_level, sizes, 0);
}

}  // namespace hypertopo
