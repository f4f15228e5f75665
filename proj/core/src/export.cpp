#include "hypertopo/export.hpp"

#include "hypertopo/csv.hpp"

namespace hypertopo {

namespace {

std::string joined(const Topology& topology, double (LinkClass::*rate)() const) {
    std::string out;
    for (const auto& c : topology.classes()) {
        if (!out.empty()) out += ';';
        out += format_number((c.*rate)());
    }
    return out;
}

}  // namespace

void write_partition_csv(std::ostream& out, const std::string& topology_id,
                         const Topology& topology, const PartitionReport& report) {
    CsvWriter csv(out);
    csv.row({"topology_id", "N", "L", "k", "lambda", "mu", "i", "pi_i", "p_wrong_i", "stderr",
             "method", "p", "t"});
    const auto lambda = joined(topology, &LinkClass::lambda);
    const auto mu = joined(topology, &LinkClass::mu);
    const auto n = std::uint64_t{topology.node_count()};
    const auto l = std::uint64_t{topology.link_count()};
    const auto k = std::uint64_t{report.k};
    for (const auto& s : report.per_state) {
        csv.field(topology_id).field(n).field(l).field(k).field(lambda).field(mu);
        csv.field(std::uint64_t{s.failed}).field(s.pi).field(s.p_wrong).field(s.std_error);
        csv.field(to_string(s.method)).field("").field("");
        csv.end_row();
    }
    csv.field(topology_id).field(n).field(l).field(k).field(lambda).field(mu);
    csv.field("summary").field(1.0).field(report.wrong_mass).field(report.wrong_stderr);
    csv.field(report.method).field(report.p).field(report.t ? format_number(*report.t) : "");
    csv.end_row();
}

void write_gossip_csv(std::ostream& out, const GossipMetrics& metrics) {
    CsvWriter csv(out);
    csv.row({"cycle", "forwarded"});
    for (std::size_t c = 0; c < metrics.forwarded_per_cycle.size(); ++c) {
        csv.field(std::uint64_t{c}).field(metrics.forwarded_per_cycle[c]).end_row();
    }
    csv.field("summary").field(metrics.total_forwarded).end_row();
}

void write_consensus_csv(std::ostream& out, const ThroughputReport& report) {
    CsvWriter csv(out);
    csv.row({"round", "leader", "round_time_s", "committed_tx", "throughput_tps"});
    for (const auto& r : report.rounds) {
        csv.field(std::uint64_t{r.round}).field(r.leader).field(r.round_time_s);
        csv.field(r.committed_tx).field(r.throughput_tps).end_row();
    }
    csv.field("summary").field("").field(report.elapsed_s).field(report.committed_total);
    csv.field(report.throughput_tps).end_row();
}

}  // namespace hypertopo
