#include "hypertopo/link_class.hpp"

#include <array>
#include <cmath>
#include <string>

#include "hypertopo/error.hpp"

namespace hypertopo {

namespace {

struct StandardSpan {
    double distance_km;
    double mtbf_h;
    double mttr_h;
};

constexpr std::array<StandardSpan, 3> kStandardSpans{{
    {5000.0, 2190.0, 24.0},
    {3000.0, 3650.0, 14.4},
    {420.0, 26070.0, 2.016},
}};

}  // namespace

void LinkClass::validate() const {
    if (!(mtbf_h > 0.0) || !(mttr_h > 0.0) || !std::isfinite(mtbf_h) ||
        !std::isfinite(mttr_h)) {
        throw spec_error("link class " + std::to_string(class_id) +
                         ": MTBF and MTTR must be positive and finite");
    }
    if (mtbf_h < mttr_h) {
        throw spec_error("link class " + std::to_string(class_id) +
                         ": MTBF must not be smaller than MTTR");
    }
    // lambda must be a proper probability per hour; mu may reach 1.
    if (!(lambda() < 1.0) || !(mu() <= 1.0)) {
        throw spec_error("link class " + std::to_string(class_id) +
                         ": MTBF must exceed 1 h and MTTR must be at least 1 h");
    }
}

LinkClass make_link_class(std::uint32_t class_id, double distance_km,
                          double mtbf_h, double mttr_h) {
    LinkClass c{class_id, distance_km, mtbf_h, mttr_h};
    c.validate();
    return c;
}

LinkClass standard_link_class(double distance_km, std::uint32_t class_id) {
    for (const auto& s : kStandardSpans) {
        if (s.distance_km == distance_km) {
            return make_link_class(class_id, s.distance_km, s.mtbf_h, s.mttr_h);
        }
    }
    throw spec_error("no standard link class for distance " +
                     std::to_string(distance_km) + " km");
}

std::vector<LinkClass> standard_link_classes() {
    std::vector<LinkClass> out;
    for (std::uint32_t i = 0; i < kStandardSpans.size(); ++i) {
        out.push_back(standard_link_class(kStandardSpans[i].distance_km, i));
    }
    return out;
}

bool is_standard_distance(double distance_km) noexcept {
    for (const auto& s : kStandardSpans) {
        if (s.distance_km == distance_km) return true;
    }
    return false;
}

}  // namespace hypertopo
