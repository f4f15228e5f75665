#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hypertopo/recursion.hpp"
#include "hypertopo/topology.hpp"

namespace hypertopo {

/// A topology description read from a config file.
///
/// Key=value form (one pair per line or whitespace separated, '#'
/// comments):
///   kind=recursive mode=semi dims=4,3 classes=5000,3000 order=gray
///   kind=hypercube dim=6 distance=3000
///   kind=incomplete dim=4 missing=15 removed=0-1,2-3
///   kind=tree n=64 degree=6      kind=ring n=64 degree=6      kind=star n=16
/// A class entry is either a standard distance (5000, 3000, 420) or
/// distance:mtbf:mttr.
///
/// JSON form uses the same keys. Asymmetric specs are JSON only:
///   {"mode": "asymmetric", "levels": [{"dim": 2},
///     {"domains": [{"hypercube": 2}, {"ring": 4}, {"mesh": 4},
///                  {"size": 4, "edges": [[0,1],[1,2],[2,3]]}]}]}
struct BuildRequest {
    TopologyType type = TopologyType::recursive;
    RecursionSpec recursion;
    unsigned dim = 0;
    std::size_t n = 0;
    unsigned degree = 0;
    std::vector<NodeIndex> missing;
    std::vector<std::pair<NodeIndex, NodeIndex>> removed;
    LinkClass link_class;
};

/// Detects JSON by a leading '{'. Throws spec_error on malformed input.
BuildRequest parse_build_request(std::string_view text);

BuildRequest load_build_request(const std::string& path);

Topology build_topology(const BuildRequest& request);

}  // namespace hypertopo
