#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hypertopo/topology.hpp"

namespace hypertopo {

/// Quorum size floor(N/2) + 1: a component needs this many nodes to be a
/// good partition.
constexpr std::size_t default_quorum(std::size_t nodes) noexcept { return nodes / 2 + 1; }

/// How per-state wrong-partition probabilities are obtained.
enum class EstimationMode : std::uint8_t {
    /// Enumerate every failed-link set when C(L, i) is under the cap,
    /// Monte Carlo otherwise.
    hybrid,
    /// Monte Carlo for every state.
    sampled,
    /// Enumerate every state; throws resource_limit_error past the cap.
    exact,
};

enum class EstimateMethod : std::uint8_t { exact, sampled, skipped };

const char* to_string(EstimationMode mode) noexcept;
const char* to_string(EstimateMethod method) noexcept;

struct AnalysisOptions {
    /// Monte Carlo samples per state.
    std::size_t budget = 2000;
    std::uint64_t seed = 1;
    /// Worker threads; results do not depend on this value.
    std::size_t workers = 1;
    std::uint64_t enumeration_cap = 2'000'000;
    EstimationMode mode = EstimationMode::hybrid;
    /// Also evaluate the minimum repair time of every wrong sample.
    bool with_repair = true;
};

/// P{wrong partition | i invalid links} and the matching repair-time mass.
struct StateEstimate {
    std::size_t failed = 0;
    double pi = 0.0;
    double p_wrong = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
    EstimateMethod method = EstimateMethod::exact;
    /// E[min repair time * 1{wrong} | i].
    double repair_mass = 0.0;
};

/// Distribution of the number of invalid links in steady state, combining
/// one count chain per link class.
struct FailureCountDistribution {
    std::vector<double> pi;
    /// Per-class stationary vectors, indexed like Topology::classes().
    std::vector<std::vector<double>> per_class;
    bool flushed = false;
};

FailureCountDistribution failure_count_distribution(const Topology& topology);

/// Estimate for one state. Enumerates all C(L, i) failed-link sets when that
/// is within the cap (and mode allows), otherwise draws `budget` random
/// i-subsets. With several link classes, subsets are drawn from the
/// steady-state law conditioned on i total failures.
StateEstimate conditional_wrong_prob(const Topology& topology, std::size_t failed, std::size_t k,
                                     const AnalysisOptions& options);

struct PartitionReport {
    /// Partition tolerance probability 1 - sum_i pi_i P{wrong | i}.
    double p = 1.0;
    /// sum_i pi_i P{wrong | i}, kept separately since it is often far
    /// below double precision of p.
    double wrong_mass = 0.0;
    double wrong_stderr = 0.0;
    /// Average minimum repair time in hours; empty when no wrong-partition
    /// mass was found.
    std::optional<double> t;
    std::size_t k = 0;
    std::vector<StateEstimate> per_state;
    /// "exact", "sampled" or "hybrid" by the per-state methods used.
    const char* method = "exact";
    bool flushed = false;

    /// -log10(1 - p); +inf when no wrong mass was found.
    double neg_log10_wrong() const;
};

PartitionReport partition_tolerance(const Topology& topology, std::size_t k,
                                    const AnalysisOptions& options = {});

/// Average minimum repair time alone (the `t` of partition_tolerance).
std::optional<double> avg_min_repair_time(const Topology& topology, std::size_t k,
                                          const AnalysisOptions& options = {});

struct BruteForceResult {
    double p = 1.0;
    double wrong_mass = 0.0;
    std::optional<double> t;
};

inline constexpr std::size_t kBruteForceMaxLinks = 22;

/// Sums over all 2^L link-state vectors with each link down independently
/// with its class's steady-state probability. Throws resource_limit_error
/// for L > 22.
BruteForceResult exact_partition_tolerance_bruteforce(const Topology& topology, std::size_t k);

/// Least parallel repair time that restores a good partition: the smallest
/// class MTTR T such that repairing every failed link with MTTR <= T leaves a
/// component of at least k nodes. Returns 0 when no wrong partition.
double min_repair_time(const Topology& topology, std::span<const LinkIndex> failed_links,
                       std::size_t k);

}  // namespace hypertopo
