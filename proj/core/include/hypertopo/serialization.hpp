#pragma once

#include <string>
#include <string_view>

#include "hypertopo/topology.hpp"

namespace hypertopo {

inline constexpr int kTopologyFormatVersion = 1;

/// Versioned JSON document:
///   {"format": "hypertopo.topology", "version": 1, "kind": {...}, "N": n,
///    "L": l, "classes": [...], "nodes": [{"flat", "levels"}...],
///    "links": [{"u", "v", "class_id", "level"}...]}
/// Serialising a parsed document reproduces it byte for byte.
std::string topology_to_json(const Topology& topology);

/// Throws spec_error on schema violations and construction_error when the
/// described graph breaks topology invariants.
Topology topology_from_json(std::string_view text);

Topology load_topology(const std::string& path);
void save_topology(const Topology& topology, const std::string& path);

}  // namespace hypertopo
