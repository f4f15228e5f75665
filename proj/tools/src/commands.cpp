#include "commands.hpp"

#include <bit>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <hypertopo/aggregate.hpp>
#include <hypertopo/build_config.hpp>
#include <hypertopo/csv.hpp>
#include <hypertopo/error.hpp>
#include <hypertopo/export.hpp>
#include <hypertopo/serialization.hpp>
#include <hypertopo/stats.hpp>

namespace hypertopo::cli {

namespace {

bool looks_inline(const std::string& s) {
    return s.find('=') != std::string::npos || s.find('{') != std::string::npos;
}

// Rebuilds the recursion description of a serialised recursive hypercube.
std::optional<RecursionSpec> recursion_of(const Topology& t) {
    const auto& kind = t.kind();
    if (kind.type != TopologyType::recursive || kind.params.empty() || !kind.mode) return std::nullopt;
    if (*kind.mode == RecursionMode::asymmetric) return std::nullopt;
    RecursionSpec spec;
    spec.mode = *kind.mode;
    for (auto d : kind.params) spec.levels.emplace_back(HypercubeLevel{static_cast<unsigned>(d)});
    spec.classes.assign(t.classes().begin(), t.classes().end());
    spec.class_by_level.assign(kind.params.size(), 0);
    for (const auto& l : t.links()) {
        if (l.level >= 1 && l.level <= spec.class_by_level.size()) spec.class_by_level[l.level - 1] = l.class_id;
    }
    return spec;
}

std::string topology_id(const Topology& t) { return t.kind().describe(); }

EstimationMode parse_mode(const std::string& s) {
    if (s == "hybrid") return EstimationMode::hybrid;
    if (s == "sampled") return EstimationMode::sampled;
    if (s == "exact") return EstimationMode::exact;
    throw spec_error("unknown estimation mode '" + s + "'");
}

AnalysisOptions analysis_options(const RunContext& ctx, const AnalyzeOptions& opts) {
    AnalysisOptions o;
    o.budget = opts.budget;
    o.seed = ctx.seed;
    o.workers = ctx.workers;
    o.enumeration_cap = opts.enumeration_cap;
    o.mode = parse_mode(opts.mode);
    return o;
}

double finite_or_nan(double v) { return std::isfinite(v) ? v : std::numeric_limits<double>::quiet_NaN(); }

unsigned log2_exact(std::size_t n) {
    if (n == 0 || !std::has_single_bit(n)) {
        throw spec_error("hypercube families need a power-of-two size, got " + std::to_string(n));
    }
    return static_cast<unsigned>(std::countr_zero(n));
}

std::string join_dims(const std::vector<unsigned>& dims) {
    std::string s;
    for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? "-" : "") + std::to_string(dims[i]);
    return s;
}

std::map<double, std::size_t> distance_census(const Topology& t) {
    std::map<double, std::size_t> out;
    for (const auto& l : t.links()) ++out[t.classes()[l.class_id].distance_km];
    return out;
}

}  // namespace

LoadedTopology load_input(const InputSpec& in) {
    if (!in.topology_file.empty() && !in.spec.empty()) {
        throw spec_error("give either --topology or --spec, not both");
    }
    if (!in.topology_file.empty()) {
        auto t = load_topology(in.topology_file);
        auto spec = recursion_of(t);
        return {std::move(t), std::move(spec)};
    }
    if (in.spec.empty()) throw spec_error("no input topology: pass --topology FILE or --spec FILE|TEXT");
    const BuildRequest req = std::filesystem::exists(in.spec) || !looks_inline(in.spec)
                                 ? load_build_request(in.spec)
                                 : parse_build_request(in.spec);
    auto t = build_topology(req);
    std::optional<RecursionSpec> spec;
    if (req.type == TopologyType::recursive && !req.recursion.hypercube_dims().empty()) spec = req.recursion;
    return {std::move(t), std::move(spec)};
}

std::string stats_line(const Topology& t) {
    std::string s = "N=" + std::to_string(t.node_count()) + " L=" + std::to_string(t.link_count());
    const auto lo = t.min_degree();
    const auto hi = t.max_degree();
    s += " degree=" + std::to_string(lo);
    if (hi != lo) s += ".." + std::to_string(hi);
    s += " classes=";
    bool first = true;
    // Longest links first, the order used by the link-consumption table.
    const auto census = distance_census(t);
    for (auto it = census.rbegin(); it != census.rend(); ++it) {
        if (!first) s += ',';
        first = false;
        s += format_number(it->first) + "km:" + std::to_string(it->second);
    }
    return s;
}

void cmd_topo_build(RunContext& ctx, const InputSpec& in) {
    const auto loaded = load_input(in);
    const auto line = stats_line(loaded.topology);
    ctx.summary["stats"] = line;
    emit_document(ctx, topology_to_json(loaded.topology));
    (ctx.out.empty() ? std::cerr : std::cout) << line << '\n';
}

void cmd_topo_stats(RunContext& ctx, const InputSpec& in) {
    const auto loaded = load_input(in);
    const auto& t = loaded.topology;
    if (ctx.out.empty() && ctx.format == Format::csv) {
        std::cout << stats_line(t) << '\n';
        return;
    }
    std::ostringstream csv;
    CsvWriter w(csv);
    w.row({"topology_id", "N", "L", "min_degree", "max_degree", "distance_km", "links"});
    for (const auto& [dist, count] : distance_census(t)) {
        w.field(topology_id(t)).field(std::uint64_t{t.node_count()}).field(std::uint64_t{t.link_count()});
        w.field(std::uint64_t{t.min_degree()}).field(std::uint64_t{t.max_degree()});
        w.field(dist).field(std::uint64_t{count});
        w.end_row();
    }
    ctx.summary["stats"] = stats_line(t);
    emit_table(ctx, csv.str());
}

void cmd_tables(RunContext& ctx, const TablesOptions& opts) {
    std::ostringstream csv;
    CsvWriter w(csv);
    auto count_row = [&](const std::string& first, const std::string& second, const RecursionSpec& spec) {
        const auto t = build_recursive(spec);
        const auto cf = closed_form_link_count(spec);
        const bool match = cf.nodes == t.node_count() && cf.links == t.link_count();
        w.field(first).field(second);
        w.field(std::uint64_t{t.node_count()}).field(std::uint64_t{t.link_count()});
        w.field(cf.nodes).field(cf.links).field(match ? "yes" : "no");
        w.end_row();
    };
    switch (opts.which) {
        case 1:
            w.row({"recursions", "dim", "N", "L", "N_closed_form", "L_closed_form", "match"});
            for (unsigned r = 0; r <= 2; ++r) {
                for (unsigned d = 2; d <= 5; ++d) {
                    count_row(std::to_string(r), std::to_string(d), RecursionSpec::completely_symmetric(d, r + 1));
                }
            }
            break;
        case 2: {
            w.row({"recursions", "path", "N", "L", "N_closed_form", "L_closed_form", "match"});
            const std::vector<std::vector<unsigned>> paths{{4}, {4, 3}, {4, 3, 2}};
            for (std::size_t r = 0; r < paths.size(); ++r) {
                count_row(std::to_string(r), join_dims(paths[r]), RecursionSpec::semi_symmetric(paths[r]));
            }
            break;
        }
        case 3: {
            w.row({"N", "method", "links_5000km", "links_3000km", "links_420km", "p", "neg_log10_wrong",
                   "t_h", "estimate"});
            struct Row {
                std::string name;
                Topology topo;
            };
            auto recursive_row = [](const char* mode, std::vector<unsigned> dims) {
                auto spec = std::string(mode) == "symmetric" ? RecursionSpec::completely_symmetric(dims[0], static_cast<unsigned>(dims.size()))
                                                             : RecursionSpec::semi_symmetric(dims);
                return Row{std::string(mode) + "(" + join_dims(dims) + ")", build_recursive(spec)};
            };
            std::vector<std::pair<std::size_t, std::vector<Row>>> blocks;
            {
                std::vector<Row> rows;
                rows.push_back({"tree(6)", build_rooted_tree(64, 6)});
                rows.push_back({"ring(6)", build_ring_lattice(64, 6)});
                rows.push_back({"hypercube(6)", build_complete_hypercube(6)});
                rows.push_back(recursive_row("symmetric", {3, 3}));
                rows.push_back(recursive_row("symmetric", {2, 2, 2}));
                rows.push_back(recursive_row("semi", {4, 2}));
                blocks.emplace_back(64, std::move(rows));
            }
            {
                std::vector<Row> rows;
                rows.push_back({"tree(12)", build_rooted_tree(4096, 12)});
                rows.push_back({"ring(12)", build_ring_lattice(4096, 12)});
                rows.push_back({"hypercube(12)", build_complete_hypercube(12)});
                rows.push_back(recursive_row("symmetric", {6, 6}));
                rows.push_back(recursive_row("symmetric", {4, 4, 4}));
                rows.push_back(recursive_row("semi", {5, 4, 3}));
                blocks.emplace_back(4096, std::move(rows));
            }
            AnalysisOptions ao;
            ao.budget = opts.budget;
            ao.seed = ctx.seed;
            ao.workers = ctx.workers;
            for (const auto& [n, rows] : blocks) {
                for (const auto& row : rows) {
                    auto census = distance_census(row.topo);
                    w.field(std::uint64_t{n}).field(row.name);
                    for (double d : {5000.0, 3000.0, 420.0}) w.field(std::uint64_t{census[d]});
                    if (n == 64 && opts.reliability) {
                        const auto rep = partition_tolerance(row.topo, default_quorum(n), ao);
                        w.field(rep.p).field(finite_or_nan(rep.neg_log10_wrong()));
                        w.field(rep.t ? *rep.t : std::numeric_limits<double>::quiet_NaN());
                        w.field(rep.method);
                    } else {
                        w.field("").field("").field("").field("");
                    }
                    w.end_row();
                }
            }
            break;
        }
        default:
            throw spec_error("tables takes 1, 2 or 3");
    }
    emit_table(ctx, csv.str());
}

void cmd_analyze_partition(RunContext& ctx, const InputSpec& in, const AnalyzeOptions& opts) {
    const auto loaded = load_input(in);
    const auto& t = loaded.topology;
    const auto ao = analysis_options(ctx, opts);
    std::ostringstream csv;
    if (opts.aggregate) {
        if (!loaded.recursion) throw spec_error("--aggregate needs a symmetric or semi-symmetric hypercube recursion");
        const auto tree = hierarchical_domains(*loaded.recursion, ao);
        const auto agg = recursive_aggregate(tree);
        CsvWriter w(csv);
        w.row({"level", "domain_nodes", "domains", "p", "neg_log10_wrong", "t_h"});
        const auto dims = loaded.recursion->hypercube_dims();
        const DomainReliability* d = &tree;
        std::uint64_t domains = 1;
        for (std::size_t m = 0; m < dims.size(); ++m) {
            const double wrong = 1.0 - d->p;
            w.field(std::uint64_t{m + 1}).field(std::uint64_t{1} << dims[m]).field(domains);
            w.field(d->p).field(wrong > 0.0 ? -std::log10(wrong) : std::numeric_limits<double>::quiet_NaN());
            w.field(d->t).end_row();
            domains <<= dims[m];
            if (!d->children.empty()) d = &d->children.front();
        }
        w.field("total").field(std::uint64_t{t.node_count()}).field("");
        w.field(agg.p).field(agg.failure_sum > 0.0 ? -std::log10(agg.failure_sum) : std::numeric_limits<double>::quiet_NaN());
        w.field(agg.t ? *agg.t : std::numeric_limits<double>::quiet_NaN()).end_row();
        ctx.summary["p"] = agg.p;
        ctx.summary["failure_sum"] = agg.failure_sum;
        ctx.summary["clamped"] = agg.clamped;
        if (agg.clamped) {
            std::cerr << "hypertopo: warning: domain failure sum " << format_number(agg.failure_sum)
                      << " exceeds 1, p clamped to 0\n";
        }
        emit_table(ctx, csv.str());
        return;
    }
    const std::size_t k = opts.k.value_or(default_quorum(t.node_count()));
    const auto rep = partition_tolerance(t, k, ao);
    write_partition_csv(csv, topology_id(t), t, rep);
    ctx.summary["p"] = rep.p;
    ctx.summary["wrong_mass"] = rep.wrong_mass;
    ctx.summary["neg_log10_wrong"] = finite_or_nan(rep.neg_log10_wrong());
    ctx.summary["t"] = rep.t ? nlohmann::ordered_json(*rep.t) : nlohmann::ordered_json(nullptr);
    ctx.summary["method"] = rep.method;
    ctx.summary["flushed"] = rep.flushed;
    if (rep.flushed) {
        std::cerr << "hypertopo: note: stationary mass below 1e-300 was flushed to 0; those states are skipped\n";
    }
    emit_table(ctx, csv.str());
}

void cmd_analyze_repair(RunContext& ctx, const InputSpec& in, const AnalyzeOptions& opts) {
    const auto loaded = load_input(in);
    const auto& t = loaded.topology;
    const std::size_t k = opts.k.value_or(default_quorum(t.node_count()));
    const auto rep = partition_tolerance(t, k, analysis_options(ctx, opts));
    std::ostringstream csv;
    CsvWriter w(csv);
    w.row({"topology_id", "N", "L", "k", "t_h", "wrong_mass", "method"});
    w.field(topology_id(t)).field(std::uint64_t{t.node_count()}).field(std::uint64_t{t.link_count()});
    w.field(std::uint64_t{k}).field(rep.t ? *rep.t : std::numeric_limits<double>::quiet_NaN());
    w.field(rep.wrong_mass).field(rep.method).end_row();
    ctx.summary["t"] = rep.t ? nlohmann::ordered_json(*rep.t) : nlohmann::ordered_json(nullptr);
    emit_table(ctx, csv.str());
}

void cmd_gossip_run(RunContext& ctx, const InputSpec& in, GossipConfig config) {
    const auto loaded = load_input(in);
    config.seed = ctx.seed;
    const auto m = run_gossip(loaded.topology, config);
    std::ostringstream csv;
    write_gossip_csv(csv, m);
    ctx.summary["total_forwarded"] = m.total_forwarded;
    ctx.summary["attempted_exchanges"] = m.attempted_exchanges;
    auto hist = nlohmann::ordered_json::object();
    for (auto [deg, count] : m.in_degree_histogram) hist[std::to_string(deg)] = count;
    ctx.summary["in_degree_histogram"] = hist;
    emit_table(ctx, csv.str());
}

Topology family_topology(const SweepFamily& family, std::size_t nodes) {
    if (family.family == "hypercube") return build_complete_hypercube(log2_exact(nodes));
    if (family.family == "recursive") {
        const unsigned n = log2_exact(nodes);
        if (n < 2) throw spec_error("recursive family needs at least 4 nodes");
        return build_recursive(RecursionSpec::semi_symmetric({n - n / 2, n / 2}));
    }
    if (family.family == "tree") return build_rooted_tree(nodes, family.degree);
    if (family.family == "ring") return build_ring_lattice(nodes, family.degree);
    if (family.family == "star") return build_star(nodes);
    throw spec_error("unknown family '" + family.family + "' (hypercube, recursive, tree, ring, star)");
}

void cmd_gossip_sweep(RunContext& ctx, const std::vector<std::size_t>& sizes,
                      const std::vector<std::string>& families, unsigned degree, std::size_t seeds,
                      GossipConfig config) {
    if (sizes.empty()) throw spec_error("sweep needs at least one size");
    config.seed = ctx.seed;
    std::ostringstream csv;
    CsvWriter w(csv);
    w.row({"family", "N", "mean_total", "mean_per_cycle", "seeds"});
    for (const auto& f : families) {
        std::vector<Topology> tops;
        for (auto n : sizes) tops.push_back(family_topology({f, degree}, n));
        const auto rows = sweep_sizes(tops, config, seeds);
        std::vector<double> x, y;
        for (const auto& r : rows) {
            w.field(f).field(std::uint64_t{r.nodes}).field(r.mean_total).field(r.mean_per_cycle);
            w.field(std::uint64_t{seeds}).end_row();
            x.push_back(static_cast<double>(r.nodes));
            y.push_back(r.mean_per_cycle);
        }
        if (rows.size() >= 2) {
            const auto fit = linear_fit(x, y);
            ctx.summary[f] = {{"slope", fit.slope}, {"intercept", fit.intercept}, {"r_squared", fit.r_squared}};
            std::cerr << f << ": slope=" << format_number(fit.slope) << " r2=" << format_number(fit.r_squared) << '\n';
        }
    }
    emit_table(ctx, csv.str());
}

void cmd_consensus_run(RunContext& ctx, const InputSpec& in, ConsensusConfig config) {
    const auto loaded = load_input(in);
    config.seed = ctx.seed;
    const auto rep = run_consensus(loaded.topology, config);
    std::ostringstream csv;
    write_consensus_csv(csv, rep);
    ctx.summary["throughput_tps"] = rep.throughput_tps;
    ctx.summary["tps_mean"] = rep.tps_mean;
    ctx.summary["tps_std"] = rep.tps_std;
    emit_table(ctx, csv.str());
}

void cmd_consensus_sweep(RunContext& ctx, const std::vector<std::size_t>& sizes,
                         const std::vector<std::string>& families, unsigned degree,
                         std::optional<LeaderPolicy> star_policy, ConsensusConfig config) {
    if (sizes.empty()) throw spec_error("sweep needs at least one size");
    config.seed = ctx.seed;
    std::vector<Topology> owned;
    owned.reserve(sizes.size() * families.size());
    std::vector<NamedTopology> entries;
    for (const auto& f : families) {
        for (auto n : sizes) {
            owned.push_back(family_topology({f, degree}, n));
            std::optional<LeaderPolicy> policy;
            if (f == "star") policy = star_policy;
            entries.push_back({f, &owned.back(), policy});
        }
    }
    const auto sweep = sweep_consensus(entries, config);
    std::ostringstream csv;
    CsvWriter w(csv);
    w.row({"family", "policy", "N", "throughput_tps", "mean_round_time_s"});
    for (std::size_t i = 0; i < sweep.rows.size(); ++i) {
        const auto& r = sweep.rows[i];
        w.field(r.family).field(to_string(entries[i].policy.value_or(config.leader_policy)));
        w.field(std::uint64_t{r.nodes}).field(r.throughput_tps).field(r.mean_round_time_s).end_row();
    }
    for (const auto& f : sweep.families) {
        ctx.summary[f.family] = {{"mean_tps", f.mean_tps}, {"std_tps", f.std_tps}};
        std::cerr << f.family << ": mean_tps=" << format_number(f.mean_tps) << " std_tps=" << format_number(f.std_tps)
                  << '\n';
    }
    emit_table(ctx, csv.str());
}

}  // namespace hypertopo::cli
