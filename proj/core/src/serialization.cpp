#include "hypertopo/serialization.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hypertopo/error.hpp"

namespace hypertopo {

using nlohmann::json;

namespace {

constexpr const char* kFormatName = "hypertopo.topology";

template <typename T>
T require(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw spec_error(std::string("topology document: missing key '") + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw spec_error(std::string("topology document: bad value for '") + key + "': " +
                         e.what());
    }
}

}  // namespace

std::string topology_to_json(const Topology& topology) {
    json kind = {{"type", to_string(topology.kind().type)},
                 {"params", topology.kind().params}};
    if (topology.kind().mode) kind["mode"] = to_string(*topology.kind().mode);

    json classes = json::array();
    for (const auto& c : topology.classes()) {
        classes.push_back({{"class_id", c.class_id},
                           {"distance_km", c.distance_km},
                           {"mtbf_h", c.mtbf_h},
                           {"mttr_h", c.mttr_h}});
    }
    json nodes = json::array();
    for (const auto& n : topology.nodes()) {
        nodes.push_back({{"flat", n.flat}, {"levels", n.levels}});
    }
    json links = json::array();
    for (const auto& l : topology.links()) {
        json jl = {{"u", l.u}, {"v", l.v}, {"class_id", l.class_id}, {"level", l.level}};
        if (l.state == LinkState::invalid) jl["invalid"] = true;
        links.push_back(std::move(jl));
    }
    json doc = {{"format", kFormatName},
                {"version", kTopologyFormatVersion},
                {"kind", std::move(kind)},
                {"N", topology.node_count()},
                {"L", topology.link_count()},
                {"classes", std::move(classes)},
                {"nodes", std::move(nodes)},
                {"links", std::move(links)}};
    return doc.dump(1) + "\n";
}

Topology topology_from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw spec_error(std::string("topology document is not valid JSON: ") + e.what());
    }
    if (require<std::string>(doc, "format") != kFormatName) {
        throw spec_error("not a hypertopo topology document");
    }
    const int version = require<int>(doc, "version");
    if (version != kTopologyFormatVersion) {
        throw spec_error("unsupported topology format version " + std::to_string(version));
    }

    const json& jkind = doc.at("kind");
    TopologyKind kind;
    const auto type = topology_type_from_string(require<std::string>(jkind, "type"));
    if (!type) throw spec_error("unknown topology type");
    kind.type = *type;
    kind.params = require<std::vector<std::int64_t>>(jkind, "params");
    if (jkind.contains("mode")) {
        kind.mode = recursion_mode_from_string(require<std::string>(jkind, "mode"));
        if (!kind.mode) throw spec_error("unknown recursion mode");
    }

    std::vector<LinkClass> classes;
    for (const auto& jc : require<json>(doc, "classes")) {
        classes.push_back(LinkClass{require<std::uint32_t>(jc, "class_id"),
                                    require<double>(jc, "distance_km"),
                                    require<double>(jc, "mtbf_h"),
                                    require<double>(jc, "mttr_h")});
    }
    std::vector<NodeId> nodes;
    for (const auto& jn : require<json>(doc, "nodes")) {
        nodes.push_back(NodeId{require<std::vector<std::uint32_t>>(jn, "levels"),
                               require<NodeIndex>(jn, "flat")});
    }
    std::vector<Link> links;
    for (const auto& jl : require<json>(doc, "links")) {
        Link l{require<NodeIndex>(jl, "u"), require<NodeIndex>(jl, "v"),
               require<std::uint32_t>(jl, "class_id"), require<std::uint32_t>(jl, "level"),
               LinkState::working};
        if (jl.contains("invalid") && jl.at("invalid").get<bool>()) l.state = LinkState::invalid;
        links.push_back(l);
    }
    if (require<std::size_t>(doc, "N") != nodes.size() ||
        require<std::size_t>(doc, "L") != links.size()) {
        throw spec_error("topology document: N or L disagrees with the node/link lists");
    }
    return Topology(std::move(kind), std::move(nodes), std::move(links), std::move(classes));
}

Topology load_topology(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw spec_error("cannot open topology file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return topology_from_json(ss.str());
}

void save_topology(const Topology& topology, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw spec_error("cannot write topology file " + path);
    out << topology_to_json(topology);
}

}  // namespace hypertopo
