#pragma once

#include <cstdint>
#include <vector>

namespace hypertopo {

/// A category of physical link. Failure and repair are modelled as
/// per-hour probabilities lambda = 1/MTBF and mu = 1/MTTR.
struct LinkClass {
    std::uint32_t class_id = 0;
    double distance_km = 0.0;
    double mtbf_h = 0.0;
    double mttr_h = 0.0;

    double lambda() const noexcept { return 1.0 / mtbf_h; }
    double mu() const noexcept { return 1.0 / mttr_h; }

    /// Steady-state probability that a single link of this class is down.
    double down_probability() const noexcept {
        return lambda() / (lambda() + mu());
    }

    /// Throws spec_error unless 0 < mttr <= mtbf and lambda, mu are valid
    /// per-hour probabilities.
    void validate() const;

    friend bool operator==(const LinkClass&, const LinkClass&) = default;
};

LinkClass make_link_class(std::uint32_t class_id, double distance_km,
                          double mtbf_h, double mttr_h);

/// Optical-cable classes for 5000 km, 3000 km and 420 km spans:
/// (MTBF, MTTR) = (2190, 24), (3650, 14.4), (26070, 2.016) hours.
LinkClass standard_link_class(double distance_km, std::uint32_t class_id);

/// The three standard classes in order 5000, 3000, 420 km with ids 0, 1, 2.
std::vector<LinkClass> standard_link_classes();

/// True if distance_km names one of the standard classes.
bool is_standard_distance(double distance_km) noexcept;

}  // namespace hypertopo
