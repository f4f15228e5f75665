#pragma once

#include <hypertopo/topology.hpp>

#include "oracles.hpp"

inline std::vector<oracle::Edge> edges_of(const hypertopo::Topology& t) {
    std::vector<oracle::Edge> out;
    for (const auto& l : t.links()) out.emplace_back(l.u, l.v);
    return out;
}

inline std::vector<double> down_probs(const hypertopo::Topology& t) {
    std::vector<double> q;
    for (const auto& l : t.links()) q.push_back(t.classes()[l.class_id].down_probability());
    return q;
}
