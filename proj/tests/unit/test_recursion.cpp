#include <doctest.h>

#include <hypertopo/error.hpp>
#include <hypertopo/recursion.hpp>

#include <random>

using namespace hypertopo;

namespace {

std::optional<NodeIndex> by_label(const Topology& t, const std::string& label) {
    for (const auto& n : t.nodes())
        if (n.label() == label) return n.flat;
    return std::nullopt;
}

// Concatenated gray-decoded digits: the cube coordinate of a node.
std::uint32_t cube_coordinate(const NodeId& id, unsigned dim) {
    std::uint32_t out = 0;
    for (auto d : id.levels) out = (out << dim) | gray_code(d);
    return out;
}

}  // namespace

TEST_CASE("completely symmetric 2x2") {
    auto t = build_recursive(RecursionSpec::completely_symmetric(2, 2));
    CHECK(t.node_count() == 16);
    CHECK(t.link_count() == 32);
    auto n00 = by_label(t, "00");
    auto n10 = by_label(t, "10");
    auto n30 = by_label(t, "30");
    auto n20 = by_label(t, "20");
    REQUIRE(n00);
    CHECK(t.find_link(*n00, *n10).has_value());
    CHECK(t.find_link(*n00, *n30).has_value());
    CHECK_FALSE(t.find_link(*n00, *n20).has_value());
    CHECK(t.degree(*n00) == 4);
}

TEST_CASE("recursive sizes") {
    auto t = build_recursive(RecursionSpec::semi_symmetric({4, 3}));
    CHECK(t.node_count() == 128);
    CHECK(t.link_count() == 448);
    auto t3 = build_recursive(RecursionSpec::completely_symmetric(3, 3));
    CHECK(t3.node_count() == 512);
    CHECK(t3.link_count() == 2304);
    auto t432 = build_recursive(RecursionSpec::semi_symmetric({4, 3, 2}));
    CHECK(t432.node_count() == 512);
    CHECK(t432.link_count() == 2304);
    auto t2 = build_recursive(RecursionSpec::completely_symmetric(2, 1));
    CHECK(t2.node_count() == 4);
    CHECK(t2.link_count() == 4);
}

TEST_CASE("closed form agrees with built graphs") {
    for (unsigned d = 1; d <= 4; ++d) {
        for (unsigned r = 1; r <= 3; ++r) {
            if (d * r > 12) continue;
            auto spec = RecursionSpec::completely_symmetric(d, r);
            auto t = build_recursive(spec);
            auto cf = closed_form_link_count(spec);
            CHECK(cf.nodes == t.node_count());
            CHECK(cf.links == t.link_count());
            auto census = link_level_census(t);
            for (std::size_t m = 0; m < r; ++m) CHECK(census[m + 1] == cf.links_by_level[m]);
        }
    }
    auto big = closed_form_link_count(RecursionSpec::completely_symmetric(4, 3));
    CHECK(big.nodes == 4096);
    CHECK(big.links == 24576);
}

TEST_CASE("closed form rejects asymmetric specs") {
    RecursionSpec spec;
    spec.mode = RecursionMode::asymmetric;
    spec.levels = {HypercubeLevel{1}, ExplicitLevel{{LocalTopology::ring(3), LocalTopology::ring(4)}}};
    std::tie(spec.classes, spec.class_by_level) = default_level_classes(2);
    CHECK_THROWS_AS(closed_form_link_count(spec), spec_error);
    CHECK_THROWS_AS(build_recursive(spec), construction_error);
}

TEST_CASE("asymmetric domains with matching suffixes") {
    RecursionSpec spec;
    spec.mode = RecursionMode::asymmetric;
    spec.levels = {HypercubeLevel{1},
                   ExplicitLevel{{LocalTopology::ring(4), LocalTopology::full_mesh(4)}}};
    std::tie(spec.classes, spec.class_by_level) = default_level_classes(2);
    auto t = build_recursive(spec);
    CHECK(t.node_count() == 8);
    // 4 interconnection links, 4 ring links, 6 mesh links
    CHECK(t.link_count() == 14);
    auto census = link_level_census(t);
    CHECK(census[1] == 4);
    CHECK(census[2] == 10);
}

TEST_CASE("domain count mismatch is a spec error") {
    RecursionSpec spec;
    spec.mode = RecursionMode::asymmetric;
    spec.levels = {HypercubeLevel{1}, ExplicitLevel{{LocalTopology::ring(4)}}};
    std::tie(spec.classes, spec.class_by_level) = default_level_classes(2);
    CHECK_THROWS_AS(build_recursive(spec), spec_error);
}

TEST_CASE("explicit levels require asymmetric mode") {
    RecursionSpec spec;
    spec.mode = RecursionMode::semi_symmetric;
    spec.levels = {ExplicitLevel{{LocalTopology::ring(4)}}};
    std::tie(spec.classes, spec.class_by_level) = default_level_classes(1);
    CHECK_THROWS_AS(spec.validate(), spec_error);
}

TEST_CASE("local topology validation") {
    LocalTopology split{4, {{0, 1}, {2, 3}}};
    CHECK_THROWS_AS(split.validate(), spec_error);
    LocalTopology dup{2, {{0, 1}, {1, 0}}};
    CHECK_THROWS_AS(dup.validate(), spec_error);
    CHECK_NOTHROW(LocalTopology::ring(5).validate());
    CHECK(LocalTopology::full_mesh(5).edges.size() == 10);
}

TEST_CASE("symmetric recursion is a relabelled hypercube") {
    // Property: with gray digits, decoding each digit and concatenating gives
    // a node coordinate under which every link joins Hamming neighbours.
    for (unsigned d = 1; d <= 3; ++d) {
        for (unsigned r = 1; r <= 3; ++r) {
            auto t = build_recursive(RecursionSpec::completely_symmetric(d, r));
            for (const auto& l : t.links()) {
                auto a = cube_coordinate(t.node(l.u), d);
                auto b = cube_coordinate(t.node(l.v), d);
                CHECK(__builtin_popcount(a ^ b) == 1);
            }
        }
    }
}

TEST_CASE("binary digit order gives the same link count") {
    auto spec = RecursionSpec::semi_symmetric({3, 2});
    spec.digit_order = DigitOrder::binary;
    auto t = build_recursive(spec);
    CHECK(t.link_count() == closed_form_link_count(spec).links);
}

TEST_CASE("link classes follow the level rule") {
    auto t = build_recursive(RecursionSpec::completely_symmetric(2, 3));
    auto census = link_class_census(t);
    CHECK(census[0] == 64);
    CHECK(census[1] == 64);
    CHECK(census[2] == 64);
    for (const auto& l : t.links()) CHECK(l.class_id == l.level - 1);

    auto t42 = build_recursive(RecursionSpec::semi_symmetric({4, 2}));
    auto c42 = link_class_census(t42);
    CHECK(c42[0] == 128);
    CHECK(c42[1] == 64);

    auto big = build_recursive(RecursionSpec::semi_symmetric({5, 4, 3}));
    auto cb = link_class_census(big);
    CHECK(cb[0] == 10240);
    CHECK(cb[1] == 8192);
    CHECK(cb[2] == 6144);

    auto deep = default_level_classes(4);
    CHECK(deep.second == std::vector<std::uint32_t>{0, 1, 2, 2});
}

TEST_CASE("random semi-symmetric specs satisfy the closed form") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<unsigned> depth(1, 3);
    std::uniform_int_distribution<unsigned> dim(0, 4);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<unsigned> dims(depth(rng));
        unsigned total = 0;
        for (auto& x : dims) total += (x = dim(rng));
        if (total == 0) continue;
        auto spec = RecursionSpec::semi_symmetric(dims);
        auto t = build_recursive(spec);
        auto cf = closed_form_link_count(spec);
        CHECK(t.node_count() == cf.nodes);
        CHECK(t.link_count() == cf.links);
        CHECK(t.min_degree() == total);
        CHECK(t.is_connected());
    }
}
