#include "hypertopo/build_config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hypertopo/error.hpp"

namespace hypertopo {

using nlohmann::json;

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto pos = s.find(sep, start);
        const auto end = pos == std::string_view::npos ? s.size() : pos;
        auto item = trim(s.substr(start, end - start));
        if (!item.empty()) out.push_back(std::move(item));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

template <typename T>
T parse_number(const std::string& s, const std::string& key) {
    T value{};
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw spec_error("config key '" + key + "': '" + s + "' is not a valid number");
    }
    return value;
}

json parse_key_values(std::string_view text) {
    json obj = json::object();
    std::istringstream lines{std::string(text)};
    std::string line;
    while (std::getline(lines, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream tokens(line);
        std::string token;
        while (tokens >> token) {
            const auto eq = token.find('=');
            if (eq == std::string::npos || eq == 0) {
                throw spec_error("config entry '" + token + "' is not key=value");
            }
            obj[token.substr(0, eq)] = token.substr(eq + 1);
        }
    }
    return obj;
}

std::uint64_t get_uint(const json& j, const std::string& key) {
    const auto& v = j.at(key);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return v.get<std::uint64_t>();
    if (v.is_string()) return parse_number<std::uint64_t>(trim(v.get<std::string>()), key);
    throw spec_error("config key '" + key + "' must be a non-negative integer");
}

std::vector<std::uint64_t> get_uint_list(const json& j, const std::string& key) {
    const auto& v = j.at(key);
    std::vector<std::uint64_t> out;
    if (v.is_array()) {
        for (const auto& x : v) {
            if (!x.is_number_integer() || x.get<std::int64_t>() < 0) {
                throw spec_error("config key '" + key + "' must list non-negative integers");
            }
            out.push_back(x.get<std::uint64_t>());
        }
    } else if (v.is_string()) {
        for (const auto& item : split(v.get<std::string>(), ',')) {
            out.push_back(parse_number<std::uint64_t>(item, key));
        }
    } else if (v.is_number_integer()) {
        out.push_back(get_uint(j, key));
    } else {
        throw spec_error("config key '" + key + "' must be a list of integers");
    }
    return out;
}

LinkClass parse_class_entry(const json& x, std::uint32_t id) {
    if (x.is_number()) return standard_link_class(x.get<double>(), id);
    if (x.is_object()) {
        return make_link_class(id, x.at("distance_km").get<double>(), x.at("mtbf_h").get<double>(),
                               x.at("mttr_h").get<double>());
    }
    if (x.is_string()) {
        const auto parts = split(x.get<std::string>(), ':');
        if (parts.size() == 1) return standard_link_class(parse_number<double>(parts[0], "classes"), id);
        if (parts.size() == 3) {
            return make_link_class(id, parse_number<double>(parts[0], "classes"),
                                   parse_number<double>(parts[1], "classes"),
                                   parse_number<double>(parts[2], "classes"));
        }
    }
    throw spec_error("class entries must be a distance or distance:mtbf:mttr");
}

std::vector<LinkClass> get_class_list(const json& j, const std::string& key) {
    const auto& v = j.at(key);
    std::vector<json> items;
    if (v.is_array()) {
        items.assign(v.begin(), v.end());
    } else if (v.is_string()) {
        for (const auto& s : split(v.get<std::string>(), ',')) items.emplace_back(s);
    } else {
        items.push_back(v);
    }
    std::vector<LinkClass> out;
    for (const auto& item : items) out.push_back(parse_class_entry(item, 0));
    return out;
}

std::vector<std::pair<NodeIndex, NodeIndex>> get_pairs(const json& j, const std::string& key) {
    std::vector<std::pair<NodeIndex, NodeIndex>> out;
    const auto& v = j.at(key);
    if (v.is_array()) {
        for (const auto& p : v) {
            if (!p.is_array() || p.size() != 2) throw spec_error("'" + key + "' entries are [a, b]");
            out.emplace_back(p[0].get<NodeIndex>(), p[1].get<NodeIndex>());
        }
    } else if (v.is_string()) {
        for (const auto& item : split(v.get<std::string>(), ',')) {
            const auto ends = split(item, '-');
            if (ends.size() != 2) throw spec_error("'" + key + "' entries are a-b");
            out.emplace_back(parse_number<NodeIndex>(ends[0], key),
                             parse_number<NodeIndex>(ends[1], key));
        }
    } else {
        throw spec_error("'" + key + "' must list node pairs");
    }
    return out;
}

LocalTopology parse_local(const json& d) {
    if (!d.is_object()) throw spec_error("domain entries must be objects");
    if (d.contains("hypercube")) {
        return LocalTopology::hypercube(d.at("hypercube").get<unsigned>(), DigitOrder::gray);
    }
    if (d.contains("mesh")) return LocalTopology::full_mesh(d.at("mesh").get<std::uint32_t>());
    if (d.contains("ring")) return LocalTopology::ring(d.at("ring").get<std::uint32_t>());
    LocalTopology t;
    t.size = d.at("size").get<std::uint32_t>();
    for (const auto& e : d.at("edges")) {
        t.edges.emplace_back(e.at(0).get<std::uint32_t>(), e.at(1).get<std::uint32_t>());
    }
    return t;
}

void check_keys(const json& j, std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, value] : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw spec_error("unknown config key '" + key + "'");
        }
    }
}

RecursionSpec parse_recursion(const json& j) {
    RecursionSpec spec;
    std::optional<RecursionMode> mode;
    if (j.contains("mode")) {
        mode = recursion_mode_from_string(j.at("mode").get<std::string>());
        if (!mode) throw spec_error("unknown recursion mode '" + j.at("mode").get<std::string>() + "'");
    }

    if (j.contains("levels") && j.at("levels").is_array()) {
        for (const auto& lv : j.at("levels")) {
            if (lv.contains("dim")) {
                spec.levels.emplace_back(HypercubeLevel{lv.at("dim").get<unsigned>()});
            } else if (lv.contains("domains")) {
                ExplicitLevel ex;
                for (const auto& d : lv.at("domains")) ex.domains.push_back(parse_local(d));
                spec.levels.emplace_back(std::move(ex));
            } else {
                throw spec_error("level entries need 'dim' or 'domains'");
            }
        }
    } else if (j.contains("dims")) {
        for (auto d : get_uint_list(j, "dims")) {
            spec.levels.emplace_back(HypercubeLevel{static_cast<unsigned>(d)});
        }
    } else if (j.contains("dim")) {
        const auto dim = static_cast<unsigned>(get_uint(j, "dim"));
        const auto r = j.contains("levels") ? get_uint(j, "levels") : 1;
        if (r == 0) throw spec_error("levels must be at least 1");
        spec.levels.assign(r, HypercubeLevel{dim});
    } else {
        throw spec_error("recursive spec needs 'dims', 'dim' or 'levels'");
    }
    if (spec.levels.empty()) throw spec_error("recursive spec has no levels");

    const auto dims = spec.hypercube_dims();
    if (mode) {
        spec.mode = *mode;
    } else if (dims.empty()) {
        spec.mode = RecursionMode::asymmetric;
    } else {
        const bool equal = std::all_of(dims.begin(), dims.end(), [&](unsigned d) { return d == dims[0]; });
        spec.mode = equal ? RecursionMode::completely_symmetric : RecursionMode::semi_symmetric;
    }

    if (j.contains("classes")) {
        auto per_level = get_class_list(j, "classes");
        if (per_level.size() != spec.depth()) {
            throw spec_error("'classes' must give one link class per level (" +
                             std::to_string(spec.depth()) + ")");
        }
        for (auto& c : per_level) {
            auto same = [&](const LinkClass& k) {
                return k.distance_km == c.distance_km && k.mtbf_h == c.mtbf_h && k.mttr_h == c.mttr_h;
            };
            auto it = std::find_if(spec.classes.begin(), spec.classes.end(), same);
            if (it == spec.classes.end()) {
                c.class_id = static_cast<std::uint32_t>(spec.classes.size());
                spec.classes.push_back(c);
                spec.class_by_level.push_back(c.class_id);
            } else {
                spec.class_by_level.push_back(it->class_id);
            }
        }
    } else {
        std::tie(spec.classes, spec.class_by_level) = default_level_classes(spec.depth());
    }

    if (j.contains("order")) {
        const auto order = j.at("order").get<std::string>();
        if (order == "gray") {
            spec.digit_order = DigitOrder::gray;
        } else if (order == "binary") {
            spec.digit_order = DigitOrder::binary;
        } else {
            throw spec_error("order must be gray or binary");
        }
    }
    spec.validate();
    return spec;
}

}  // namespace

BuildRequest parse_build_request(std::string_view text) {
    const auto body = trim(text);
    json j;
    if (!body.empty() && body.front() == '{') {
        try {
            j = json::parse(body);
        } catch (const json::parse_error& e) {
            throw spec_error(std::string("config is not valid JSON: ") + e.what());
        }
    } else {
        j = parse_key_values(body);
    }
    if (j.empty()) throw spec_error("empty topology config");

    BuildRequest req;
    req.link_class = standard_link_class(5000.0, 0);
    try {
        std::string kind = j.contains("kind") ? j.at("kind").get<std::string>() : "recursive";
        if (kind == "recursive") {
            check_keys(j, {"kind", "mode", "dims", "dim", "levels", "classes", "order"});
            req.type = TopologyType::recursive;
            req.recursion = parse_recursion(j);
            return req;
        }
        if (j.contains("distance")) {
            const auto& d = j.at("distance");
            req.link_class = parse_class_entry(d.is_string() ? json(d.get<std::string>()) : d, 0);
        }
        if (kind == "hypercube" || kind == "incomplete") {
            check_keys(j, {"kind", "dim", "missing", "removed", "distance"});
            req.dim = static_cast<unsigned>(get_uint(j, "dim"));
            if (kind == "hypercube") {
                if (j.contains("missing") || j.contains("removed")) {
                    throw spec_error("missing/removed need kind=incomplete");
                }
                req.type = TopologyType::complete_hypercube;
                return req;
            }
            req.type = TopologyType::incomplete_hypercube;
            if (j.contains("missing")) {
                for (auto m : get_uint_list(j, "missing")) req.missing.push_back(static_cast<NodeIndex>(m));
            }
            if (j.contains("removed")) req.removed = get_pairs(j, "removed");
            return req;
        }
        if (kind == "tree" || kind == "ring") {
            check_keys(j, {"kind", "n", "degree", "distance"});
            req.type = kind == "tree" ? TopologyType::rooted_tree : TopologyType::ring_lattice;
            req.n = get_uint(j, "n");
            req.degree = static_cast<unsigned>(get_uint(j, "degree"));
            return req;
        }
        if (kind == "star") {
            check_keys(j, {"kind", "n", "distance"});
            req.type = TopologyType::star;
            req.n = get_uint(j, "n");
            return req;
        }
        throw spec_error("unknown topology kind '" + kind + "'");
    } catch (const json::exception& e) {
        throw spec_error(std::string("malformed topology config: ") + e.what());
    }
}

BuildRequest load_build_request(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw spec_error("cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_build_request(ss.str());
}

Topology build_topology(const BuildRequest& request) {
    switch (request.type) {
        case TopologyType::recursive:
            return build_recursive(request.recursion);
        case TopologyType::complete_hypercube:
            return build_complete_hypercube(request.dim, request.link_class);
        case TopologyType::incomplete_hypercube: {
            if (request.dim > kMaxHypercubeDim) {
                throw resource_limit_error("hypercube dimension exceeds limit");
            }
            std::set<NodeIndex> missing(request.missing.begin(), request.missing.end());
            std::vector<NodeIndex> present;
            for (NodeIndex v = 0; v < (NodeIndex{1} << request.dim); ++v) {
                if (!missing.contains(v)) present.push_back(v);
            }
            return build_incomplete_hypercube(request.dim, present, request.removed);
        }
        case TopologyType::rooted_tree:
            return build_rooted_tree(request.n, request.degree, request.link_class);
        case TopologyType::ring_lattice:
            return build_ring_lattice(request.n, request.degree, request.link_class);
        case TopologyType::star:
            return build_star(request.n, request.link_class);
        case TopologyType::custom:
            break;
    }
    throw spec_error("cannot build a custom topology from a config");
}

}  // namespace hypertopo
