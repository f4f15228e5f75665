#include "hypertopo/partition.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <random>
#include <string>
#include <thread>

#include "hypertopo/error.hpp"
#include "hypertopo/markov.hpp"
#include "hypertopo/union_find.hpp"

namespace hypertopo {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_sum_exp(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double hi = std::max(a, b);
    return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

double safe_log(double x) { return x > 0.0 ? std::log(x) : kNegInf; }

/// C(n, k) if it does not exceed cap, otherwise nullopt.
std::optional<std::uint64_t> bounded_binomial(std::size_t n, std::size_t k, std::uint64_t cap) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t c = 1;
    for (std::size_t j = 1; j <= k; ++j) {
        // c * (n-k+j) is divisible by j; an overflow means far past any cap.
        std::uint64_t scaled = 0;
        if (__builtin_mul_overflow(c, std::uint64_t{n - k + j}, &scaled)) return std::nullopt;
        c = scaled / j;
        if (c > cap) return std::nullopt;
    }
    return c;
}

/// Decides whether a set of failed links leaves a wrong partition and, if
/// so, the least repair threshold that restores one.
class FailureEvaluator {
public:
    FailureEvaluator(const Topology& topology, std::size_t k)
        : topo_(topology), k_(k), uf_(topology.node_count()) {
        const auto classes = topology.classes();
        mttr_.reserve(classes.size());
        for (const auto& c : classes) mttr_.push_back(c.mttr_h);
        link_mttr_.reserve(topology.link_count());
        for (const auto& l : topology.links()) link_mttr_.push_back(mttr_[l.class_id]);
    }

    struct Outcome {
        bool wrong = false;
        double repair = 0.0;
    };

    Outcome evaluate(const std::vector<char>& failed, std::span<const LinkIndex> failed_list,
                     bool with_repair) {
        uf_.reset(topo_.node_count());
        const auto links = topo_.links();
        for (std::size_t i = 0; i < links.size(); ++i) {
            if (!failed[i] && links[i].state == LinkState::working) uf_.unite(links[i].u, links[i].v);
        }
        if (uf_.largest() >= k_) return {};
        if (!with_repair) return {true, 0.0};

        // Repairs run in parallel, so a plan costs its slowest link. Adding
        // failed links in MTTR order and stopping at the first restoring
        // threshold gives the cheapest plan.
        order_.assign(failed_list.begin(), failed_list.end());
        std::sort(order_.begin(), order_.end(), [&](LinkIndex a, LinkIndex b) {
            return link_mttr_[a] < link_mttr_[b];
        });
        double threshold = 0.0;
        std::size_t pos = 0;
        while (pos < order_.size()) {
            threshold = link_mttr_[order_[pos]];
            while (pos < order_.size() && link_mttr_[order_[pos]] <= threshold) {
                const auto& l = links[order_[pos]];
                uf_.unite(l.u, l.v);
                ++pos;
            }
            if (uf_.largest() >= k_) break;
        }
        return {true, threshold};
    }

private:
    const Topology& topo_;
    std::size_t k_;
    UnionFind uf_;
    std::vector<double> mttr_;
    std::vector<double> link_mttr_;
    std::vector<LinkIndex> order_;
};

/// Links grouped by class with the per-class steady-state count laws.
/// `log_suffix[g][r]` is ln P(groups g.. have r invalid links in total).
struct ClassGroups {
    std::vector<std::vector<LinkIndex>> links;
    std::vector<std::vector<double>> log_pi;
    std::vector<std::vector<double>> log_suffix;
    FailureCountDistribution distribution;

    explicit ClassGroups(const Topology& topology) {
        const auto classes = topology.classes();
        std::vector<std::vector<LinkIndex>> by_class(classes.size());
        for (LinkIndex i = 0; i < topology.link_count(); ++i) {
            by_class[topology.link(i).class_id].push_back(i);
        }
        distribution.per_class.resize(classes.size());
        distribution.pi = {1.0};
        for (std::size_t c = 0; c < classes.size(); ++c) {
            if (by_class[c].empty()) {
                distribution.per_class[c] = {1.0};
                continue;
            }
            const auto st = stationary(CountChain{by_class[c].size(), classes[c].lambda(),
                                                  classes[c].mu()});
            distribution.flushed = distribution.flushed || st.flushed;
            distribution.per_class[c] = st.pi;
            links.push_back(std::move(by_class[c]));
            std::vector<double> lp(st.pi.size());
            std::transform(st.pi.begin(), st.pi.end(), lp.begin(), safe_log);
            log_pi.push_back(std::move(lp));
        }

        // Linear convolution for the reported pi; a single class keeps the
        // solver output untouched.
        if (log_pi.size() == 1) {
            for (std::size_t c = 0; c < classes.size(); ++c) {
                if (distribution.per_class[c].size() > 1) distribution.pi = distribution.per_class[c];
            }
        } else {
            for (std::size_t c = 0; c < classes.size(); ++c) {
                const auto& pc = distribution.per_class[c];
                if (pc.size() == 1) continue;
                std::vector<double> next(distribution.pi.size() + pc.size() - 1, 0.0);
                for (std::size_t a = 0; a < distribution.pi.size(); ++a) {
                    for (std::size_t b = 0; b < pc.size(); ++b) next[a + b] += distribution.pi[a] * pc[b];
                }
                distribution.pi = std::move(next);
            }
            for (auto& p : distribution.pi) {
                if (p != 0.0 && p < kFlushThreshold) {
                    p = 0.0;
                    distribution.flushed = true;
                }
            }
        }

        const std::size_t groups = links.size();
        log_suffix.resize(groups + 1);
        log_suffix[groups] = {0.0};
        for (std::size_t g = groups; g-- > 0;) {
            const auto& tail = log_suffix[g + 1];
            std::vector<double> cur(tail.size() + links[g].size(), kNegInf);
            for (std::size_t a = 0; a < log_pi[g].size(); ++a) {
                if (log_pi[g][a] == kNegInf) continue;
                for (std::size_t b = 0; b < tail.size(); ++b) {
                    cur[a + b] = log_sum_exp(cur[a + b], log_pi[g][a] + tail[b]);
                }
            }
            log_suffix[g] = std::move(cur);
        }
    }

    std::size_t total_links() const {
        std::size_t n = 0;
        for (const auto& g : links) n += g.size();
        return n;
    }
};

class StateSampler {
public:
    StateSampler(const ClassGroups& groups, std::size_t failed, std::uint64_t seed)
        : groups_(groups), failed_(failed), pools_(groups.links) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(failed), 0x9e3779b9u};
        rng_.seed(seq);
    }

    /// Draws one failed-link set; writes it to `out`.
    void draw(std::vector<LinkIndex>& out) {
        out.clear();
        std::size_t remaining = failed_;
        const std::size_t groups = pools_.size();
        for (std::size_t g = 0; g < groups; ++g) {
            std::size_t take = remaining;
            if (g + 1 < groups) take = draw_group_count(g, remaining);
            remaining -= take;
            auto& pool = pools_[g];
            for (std::size_t j = 0; j < take; ++j) {
                std::uniform_int_distribution<std::size_t> pick(j, pool.size() - 1);
                std::swap(pool[j], pool[pick(rng_)]);
                out.push_back(pool[j]);
            }
        }
    }

private:
    std::size_t draw_group_count(std::size_t g, std::size_t remaining) {
        const auto& lp = groups_.log_pi[g];
        const auto& tail = groups_.log_suffix[g + 1];
        const double norm = groups_.log_suffix[g][remaining];
        const std::size_t lo = remaining >= tail.size() ? remaining - (tail.size() - 1) : 0;
        const std::size_t hi = std::min(remaining, lp.size() - 1);
        double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng_);
        std::size_t last_positive = lo;
        for (std::size_t a = lo; a <= hi; ++a) {
            const double w = std::exp(lp[a] + tail[remaining - a] - norm);
            if (w > 0.0) last_positive = a;
            if (u < w) return a;
            u -= w;
        }
        return last_positive;
    }

    const ClassGroups& groups_;
    std::size_t failed_;
    std::vector<std::vector<LinkIndex>> pools_;
    std::mt19937_64 rng_;
};

struct StateJob {
    const Topology& topology;
    const ClassGroups& groups;
    std::size_t k;
    const AnalysisOptions& options;
};

StateEstimate enumerate_state(const StateJob& job, std::size_t failed) {
    const auto& groups = job.groups;
    const std::size_t total = groups.total_links();
    // Link positions in group order; class counts of a subset pick the
    // conditional weight of that class split.
    std::vector<LinkIndex> flat;
    std::vector<std::size_t> group_of;
    for (std::size_t g = 0; g < groups.links.size(); ++g) {
        for (auto li : groups.links[g]) {
            flat.push_back(li);
            group_of.push_back(g);
        }
    }
    const double log_norm = groups.log_suffix[0].size() > failed ? groups.log_suffix[0][failed] : kNegInf;

    FailureEvaluator eval(job.topology, job.k);
    std::vector<char> mask(job.topology.link_count(), 0);
    std::vector<LinkIndex> chosen;
    std::vector<std::size_t> idx(failed);
    for (std::size_t j = 0; j < failed; ++j) idx[j] = j;
    std::vector<std::size_t> counts(groups.links.size());

    StateEstimate est;
    est.failed = failed;
    est.method = EstimateMethod::exact;
    double wrong = 0.0;
    double repair = 0.0;
    std::uint64_t subsets = 0;
    while (true) {
        chosen.clear();
        std::fill(counts.begin(), counts.end(), 0);
        for (auto j : idx) {
            chosen.push_back(flat[j]);
            mask[flat[j]] = 1;
            ++counts[group_of[j]];
        }
        double weight = 1.0;
        if (groups.links.size() > 1) {
            double lw = -log_norm;
            for (std::size_t g = 0; g < counts.size(); ++g) {
                lw += groups.log_pi[g][counts[g]] - log_choose(groups.links[g].size(), counts[g]);
            }
            weight = std::exp(lw);
        }
        const auto outcome = eval.evaluate(mask, chosen, job.options.with_repair);
        if (outcome.wrong) {
            wrong += weight;
            repair += weight * outcome.repair;
        }
        for (auto li : chosen) mask[li] = 0;
        ++subsets;

        // Next combination in lexicographic order.
        std::size_t pos = failed;
        while (pos > 0 && idx[pos - 1] == total - failed + pos - 1) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        for (std::size_t j = pos; j < failed; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (groups.links.size() <= 1) {
        wrong /= static_cast<double>(subsets);
        repair /= static_cast<double>(subsets);
    }
    est.p_wrong = std::clamp(wrong, 0.0, 1.0);
    est.repair_mass = repair;
    est.samples = subsets;
    return est;
}

StateEstimate sample_state(const StateJob& job, std::size_t failed) {
    FailureEvaluator eval(job.topology, job.k);
    StateSampler sampler(job.groups, failed, job.options.seed);
    std::vector<char> mask(job.topology.link_count(), 0);
    std::vector<LinkIndex> chosen;
    std::uint64_t wrong = 0;
    double repair = 0.0;
    const std::size_t n = std::max<std::size_t>(job.options.budget, 1);
    for (std::size_t s = 0; s < n; ++s) {
        sampler.draw(chosen);
        for (auto li : chosen) mask[li] = 1;
        const auto outcome = eval.evaluate(mask, chosen, job.options.with_repair);
        if (outcome.wrong) {
            ++wrong;
            repair += outcome.repair;
        }
        for (auto li : chosen) mask[li] = 0;
    }
    StateEstimate est;
    est.failed = failed;
    est.method = EstimateMethod::sampled;
    est.samples = n;
    const double p = static_cast<double>(wrong) / static_cast<double>(n);
    est.p_wrong = p;
    est.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    est.repair_mass = repair / static_cast<double>(n);
    return est;
}

StateEstimate estimate_state(const StateJob& job, std::size_t failed) {
    const std::size_t total = job.groups.total_links();
    if (failed > total) throw spec_error("state index exceeds the number of links");
    const auto subsets = bounded_binomial(total, failed, job.options.enumeration_cap);
    switch (job.options.mode) {
        case EstimationMode::exact:
            if (!subsets) {
                throw resource_limit_error("C(" + std::to_string(total) + ", " +
                                           std::to_string(failed) +
                                           ") exceeds the enumeration cap");
            }
            return enumerate_state(job, failed);
        case EstimationMode::hybrid:
            if (subsets) return enumerate_state(job, failed);
            return sample_state(job, failed);
        case EstimationMode::sampled:
            return sample_state(job, failed);
    }
    return sample_state(job, failed);
}

void validate_quorum(const Topology& topology, std::size_t k) {
    if (k < 1 || k > topology.node_count()) {
        throw spec_error("quorum k must lie in [1, " + std::to_string(topology.node_count()) + "]");
    }
}

}  // namespace

const char* to_string(EstimationMode mode) noexcept {
    switch (mode) {
        case EstimationMode::hybrid: return "hybrid";
        case EstimationMode::sampled: return "sampled";
        case EstimationMode::exact: return "exact";
    }
    return "hybrid";
}

const char* to_string(EstimateMethod method) noexcept {
    switch (method) {
        case EstimateMethod::exact: return "exact";
        case EstimateMethod::sampled: return "sampled";
        case EstimateMethod::skipped: return "skipped";
    }
    return "exact";
}

double PartitionReport::neg_log10_wrong() const {
    if (!(wrong_mass > 0.0)) return std::numeric_limits<double>::infinity();
    return -std::log10(wrong_mass);
}

FailureCountDistribution failure_count_distribution(const Topology& topology) {
    return ClassGroups(topology).distribution;
}

StateEstimate conditional_wrong_prob(const Topology& topology, std::size_t failed, std::size_t k,
                                     const AnalysisOptions& options) {
    validate_quorum(topology, k);
    const ClassGroups groups(topology);
    StateEstimate est = estimate_state(StateJob{topology, groups, k, options}, failed);
    est.pi = failed < groups.distribution.pi.size() ? groups.distribution.pi[failed] : 0.0;
    return est;
}

PartitionReport partition_tolerance(const Topology& topology, std::size_t k,
                                    const AnalysisOptions& options) {
    validate_quorum(topology, k);
    const ClassGroups groups(topology);
    const auto& pi = groups.distribution.pi;
    const std::size_t states = pi.size();
    const StateJob job{topology, groups, k, options};

    PartitionReport report;
    report.k = k;
    report.flushed = groups.distribution.flushed;
    report.per_state.resize(states);

    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < states; ++i) {
        report.per_state[i].failed = i;
        report.per_state[i].pi = pi[i];
        if (pi[i] == 0.0 && options.mode != EstimationMode::exact) {
            report.per_state[i].method = EstimateMethod::skipped;
            report.per_state[i].p_wrong = std::numeric_limits<double>::quiet_NaN();
            report.per_state[i].std_error = std::numeric_limits<double>::quiet_NaN();
        } else {
            todo.push_back(i);
        }
    }

    // States are independent and each seeds its own stream from (seed, i),
    // so the worker count only changes wall time.
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        while (true) {
            const std::size_t t = next.fetch_add(1);
            if (t >= todo.size()) return;
            try {
                auto est = estimate_state(job, todo[t]);
                est.pi = pi[todo[t]];
                report.per_state[todo[t]] = est;
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(todo.size());
            }
        }
    };
    const std::size_t workers = std::clamp<std::size_t>(options.workers, 1, 256);
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    bool any_exact = false;
    bool any_sampled = false;
    double wrong = 0.0;
    double variance = 0.0;
    double repair = 0.0;
    for (const auto& s : report.per_state) {
        if (s.method == EstimateMethod::skipped) continue;
        any_exact = any_exact || s.method == EstimateMethod::exact;
        any_sampled = any_sampled || s.method == EstimateMethod::sampled;
        wrong += s.pi * s.p_wrong;
        variance += s.pi * s.pi * s.std_error * s.std_error;
        repair += s.pi * s.repair_mass;
    }
    report.method = any_sampled ? (any_exact ? "hybrid" : "sampled") : "exact";
    report.wrong_mass = std::clamp(wrong, 0.0, 1.0);
    report.wrong_stderr = std::sqrt(variance);
    report.p = 1.0 - report.wrong_mass;
    if (options.with_repair && report.wrong_mass > 0.0) report.t = repair / wrong;
    return report;
}

std::optional<double> avg_min_repair_time(const Topology& topology, std::size_t k,
                                          const AnalysisOptions& options) {
    AnalysisOptions opts = options;
    opts.with_repair = true;
    return partition_tolerance(topology, k, opts).t;
}

BruteForceResult exact_partition_tolerance_bruteforce(const Topology& topology, std::size_t k) {
    validate_quorum(topology, k);
    const std::size_t links = topology.link_count();
    if (links > kBruteForceMaxLinks) {
        throw resource_limit_error("brute force supports at most " +
                                   std::to_string(kBruteForceMaxLinks) + " links");
    }
    std::vector<double> q(links);
    for (LinkIndex i = 0; i < links; ++i) q[i] = topology.class_of(i).down_probability();

    FailureEvaluator eval(topology, k);
    std::vector<char> mask(links, 0);
    std::vector<LinkIndex> failed;
    BruteForceResult out;
    double wrong = 0.0;
    double repair = 0.0;
    for (std::uint64_t state = 0; state < (std::uint64_t{1} << links); ++state) {
        double prob = 1.0;
        failed.clear();
        for (std::size_t i = 0; i < links; ++i) {
            const bool down = (state >> i) & 1u;
            mask[i] = down ? 1 : 0;
            prob *= down ? q[i] : 1.0 - q[i];
            if (down) failed.push_back(static_cast<LinkIndex>(i));
        }
        const auto outcome = eval.evaluate(mask, failed, true);
        if (outcome.wrong) {
            wrong += prob;
            repair += prob * outcome.repair;
        }
    }
    out.wrong_mass = wrong;
    out.p = 1.0 - wrong;
    if (wrong > 0.0) out.t = repair / wrong;
    return out;
}

double min_repair_time(const Topology& topology, std::span<const LinkIndex> failed_links,
                       std::size_t k) {
    validate_quorum(topology, k);
    std::vector<char> mask(topology.link_count(), 0);
    std::vector<LinkIndex> failed;
    for (auto li : failed_links) {
        if (li >= topology.link_count()) throw spec_error("failed link index out of range");
        if (!mask[li]) failed.push_back(li);
        mask[li] = 1;
    }
    FailureEvaluator eval(topology, k);
    return eval.evaluate(mask, failed, true).repair;
}

}  // namespace hypertopo
