#include <iostream>

#include <CLI11.hpp>

#include <hypertopo/error.hpp>

#include "commands.hpp"

using namespace hypertopo;
using namespace hypertopo::cli;

namespace {

constexpr int kUsageError = 2;
constexpr int kNumericError = 3;

void add_input(CLI::App* cmd, InputSpec& in) {
    cmd->add_option("--topology", in.topology_file, "Serialised topology file");
    cmd->add_option("--spec", in.spec, "Build request file, or inline key=value / JSON text");
}

void add_analysis(CLI::App* cmd, AnalyzeOptions& a) {
    cmd->add_option("--k", a.k, "Quorum size (default floor(N/2)+1)");
    cmd->add_option("--budget", a.budget, "Monte Carlo samples per state")->capture_default_str();
    cmd->add_option("--enumeration-cap", a.enumeration_cap, "Enumerate states with at most this many subsets")
        ->capture_default_str();
    cmd->add_option("--mode", a.mode, "hybrid, sampled or exact")
        ->check(CLI::IsMember({"hybrid", "sampled", "exact"}))
        ->capture_default_str();
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

// Every option of the chosen command chain, as given or defaulted.
void record_params(const CLI::App* app, std::map<std::string, std::string>& params) {
    for (const auto* opt : app->get_options()) {
        if (opt->get_lnames().empty()) continue;
        const auto& name = opt->get_lnames().front();
        if (name == "help") continue;
        std::string value;
        if (opt->count() > 0) {
            const auto& r = opt->results();
            for (std::size_t i = 0; i < r.size(); ++i) value += (i ? "," : "") + r[i];
        } else {
            value = opt->get_default_str();
        }
        params[name] = value;
    }
    for (const auto* sub : app->get_subcommands()) record_params(sub, params);
}

std::string command_path(const CLI::App* app) {
    std::string path = app->get_name();
    for (const auto* sub : app->get_subcommands()) path += " " + command_path(sub);
    return path;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reliability workbench for hypercube-based P2P topologies", "hypertopo"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", HYPERTOPO_VERSION);

    RunContext ctx;
    std::string format = "csv";
    app.add_option("--seed", ctx.seed, "Random seed")->capture_default_str();
    app.add_option("--out", ctx.out, "Output data file (a .manifest.json sidecar is written next to it)");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    app.add_option("--workers", ctx.workers, "Worker threads")->check(CLI::Range(1, 256))->capture_default_str();

    InputSpec input;
    AnalyzeOptions analyze;
    TablesOptions tables;
    GossipConfig gossip;
    ConsensusConfig consensus;
    std::string sizes_text;
    std::string families_text;
    std::string policy_text = "random";
    std::string star_policy_text;
    unsigned degree = 4;
    std::size_t seeds = 3;

    auto* topo = app.add_subcommand("topo", "Build or inspect a topology")->require_subcommand(1);
    auto* topo_build = topo->add_subcommand("build", "Build a topology from a spec and serialise it");
    add_input(topo_build, input);
    auto* topo_stats = topo->add_subcommand("stats", "Print node, link, degree and class counts");
    add_input(topo_stats, input);

    auto* tab = app.add_subcommand("tables", "Regenerate the node/link count and link-census tables");
    tab->add_option("which", tables.which, "1, 2 or 3")->required()->check(CLI::IsMember({1, 2, 3}));
    tab->add_option("--budget", tables.budget, "Monte Carlo samples per state for table 3")->capture_default_str();
    tab->add_flag("!--no-reliability", tables.reliability, "Skip the reliability columns of table 3");

    auto* an = app.add_subcommand("analyze", "Partition tolerance analyses")->require_subcommand(1);
    auto* an_part = an->add_subcommand("partition", "Per-state partition tolerance report");
    add_input(an_part, input);
    add_analysis(an_part, analyze);
    an_part->add_flag("--aggregate", analyze.aggregate, "Combine per-level domain results recursively");
    auto* an_rep = an->add_subcommand("repair", "Average minimum repair time");
    add_input(an_rep, input);
    add_analysis(an_rep, analyze);

    auto* gs = app.add_subcommand("gossip", "Cycle-based gossip simulation")->require_subcommand(1);
    auto add_gossip = [&](CLI::App* cmd) {
        cmd->add_option("--cycles", gossip.cycles, "Cycles to simulate")->capture_default_str();
        cmd->add_option("--fanout", gossip.fanout, "Neighbours contacted per cycle")->capture_default_str();
        cmd->add_option("--delay", gossip.delay_prob, "Probability an exchange is suppressed")->capture_default_str();
        cmd->add_option("--cycle-len", gossip.cycle_len, "Time units per cycle")->capture_default_str();
    };
    auto* gs_run = gs->add_subcommand("run", "Simulate one topology");
    add_input(gs_run, input);
    add_gossip(gs_run);
    auto* gs_sweep = gs->add_subcommand("sweep", "Average traffic across sizes");
    add_gossip(gs_sweep);
    gs_sweep->add_option("--sizes", sizes_text, "Comma-separated node counts")->default_val("16,32,64,128");
    gs_sweep->add_option("--families", families_text, "hypercube, recursive, tree, ring, star")
        ->default_val("hypercube");
    gs_sweep->add_option("--degree", degree, "Degree for tree and ring families")->capture_default_str();
    gs_sweep->add_option("--seeds", seeds, "Runs per size")->capture_default_str();

    auto* cs = app.add_subcommand("consensus", "Propose/vote consensus simulation")->require_subcommand(1);
    auto add_consensus = [&](CLI::App* cmd) {
        cmd->add_option("--rounds", consensus.rounds, "Rounds to simulate")->capture_default_str();
        cmd->add_option("--leader-policy", policy_text, "random, fixed-hub or rotate")->capture_default_str();
        cmd->add_option("--bandwidth", consensus.link_bandwidth, "Link bandwidth in bits/s")->capture_default_str();
        cmd->add_option("--latency", consensus.link_latency, "Per-hop latency in seconds")->capture_default_str();
        cmd->add_option("--tx-rate", consensus.tx_rate, "Transactions per second")->capture_default_str();
        cmd->add_option("--block-cap", consensus.block_cap, "Transactions per block")->capture_default_str();
        cmd->add_option("--rotate-period", consensus.rotate_period, "Rounds per leader under rotate")
            ->capture_default_str();
    };
    auto* cs_run = cs->add_subcommand("run", "Simulate one topology");
    add_input(cs_run, input);
    add_consensus(cs_run);
    auto* cs_sweep = cs->add_subcommand("sweep", "Throughput across sizes and families");
    add_consensus(cs_sweep);
    cs_sweep->add_option("--sizes", sizes_text, "Comma-separated node counts")->default_val("4,16,64");
    cs_sweep->add_option("--families", families_text, "hypercube, recursive, tree, ring, star")
        ->default_val("hypercube,star");
    cs_sweep->add_option("--star-policy", star_policy_text, "Leader policy for the star family");
    cs_sweep->add_option("--degree", degree, "Degree for tree and ring families")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsageError;
    }

    try {
        ctx.format = format == "json" ? Format::json : Format::csv;
        ctx.command = command_path(&app);
        record_params(&app, ctx.params);

        auto parse_policy = [](const std::string& s) {
            auto p = leader_policy_from_string(s);
            if (!p) throw spec_error("unknown leader policy '" + s + "'");
            return *p;
        };
        auto parse_sizes = [&] {
            std::vector<std::size_t> out;
            for (const auto& s : split_list(sizes_text)) {
                try {
                    std::size_t used = 0;
                    out.push_back(std::stoul(s, &used));
                    if (used != s.size()) throw std::invalid_argument(s);
                } catch (const std::logic_error&) {
                    throw spec_error("bad size '" + s + "'");
                }
            }
            return out;
        };

        if (topo_build->parsed()) {
            cmd_topo_build(ctx, input);
        } else if (topo_stats->parsed()) {
            cmd_topo_stats(ctx, input);
        } else if (tab->parsed()) {
            cmd_tables(ctx, tables);
        } else if (an_part->parsed()) {
            cmd_analyze_partition(ctx, input, analyze);
        } else if (an_rep->parsed()) {
            cmd_analyze_repair(ctx, input, analyze);
        } else if (gs_run->parsed()) {
            cmd_gossip_run(ctx, input, gossip);
        } else if (gs_sweep->parsed()) {
            cmd_gossip_sweep(ctx, parse_sizes(), split_list(families_text), degree, seeds, gossip);
        } else if (cs_run->parsed()) {
            consensus.leader_policy = parse_policy(policy_text);
            cmd_consensus_run(ctx, input, consensus);
        } else if (cs_sweep->parsed()) {
            consensus.leader_policy = parse_policy(policy_text);
            std::optional<LeaderPolicy> star;
            if (!star_policy_text.empty()) star = parse_policy(star_policy_text);
            cmd_consensus_sweep(ctx, parse_sizes(), split_list(families_text), degree, star, consensus);
        }
    } catch (const numeric_error& e) {
        std::cerr << "hypertopo: numeric failure: " << e.what() << " (residual " << e.residual() << ")\n";
        return kNumericError;
    } catch (const spec_error& e) {
        std::cerr << "hypertopo: " << e.what() << '\n';
        return kUsageError;
    } catch (const resource_limit_error& e) {
        std::cerr << "hypertopo: " << e.what() << '\n';
        return kUsageError;
    } catch (const construction_error& e) {
        std::cerr << "hypertopo: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "hypertopo: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
