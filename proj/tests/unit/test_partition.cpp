#include <doctest.h>

#include <hypertopo/error.hpp>
#include <hypertopo/partition.hpp>
#include <hypertopo/recursion.hpp>

#include <cmath>
#include <random>

#include "../support/helpers.hpp"

using namespace hypertopo;

namespace {

Topology custom(std::size_t n, const std::vector<oracle::Edge>& edges, const LinkClass& c) {
    std::vector<NodeId> nodes(n);
    for (std::size_t i = 0; i < n; ++i) nodes[i] = {{static_cast<std::uint32_t>(i)}, static_cast<NodeIndex>(i)};
    std::vector<Link> links;
    for (auto [a, b] : edges) links.push_back({a, b, 0, 1, LinkState::working});
    auto cls = c;
    cls.class_id = 0;
    return Topology({TopologyType::custom, {}, {}}, nodes, links, {cls});
}

AnalysisOptions exact_options() {
    AnalysisOptions o;
    o.mode = EstimationMode::exact;
    return o;
}

const LinkClass kFast = make_link_class(0, 1, 20.0, 5.0);  // q = 0.2

}  // namespace

TEST_CASE("conditional wrong probability edge cases") {
    auto c3 = build_complete_hypercube(3);
    AnalysisOptions o;
    CHECK(conditional_wrong_prob(c3, 0, 5, o).p_wrong == 0.0);
    CHECK(conditional_wrong_prob(c3, 12, 5, o).p_wrong == 1.0);
    CHECK(conditional_wrong_prob(c3, 12, 1, o).p_wrong == 0.0);
    CHECK_THROWS_AS(conditional_wrong_prob(c3, 13, 5, o), spec_error);
    CHECK_THROWS_AS(conditional_wrong_prob(c3, 1, 0, o), spec_error);
    CHECK_THROWS_AS(conditional_wrong_prob(c3, 1, 9, o), spec_error);
}

TEST_CASE("3-cube with three failed links") {
    auto c3 = build_complete_hypercube(3);
    const auto edges = edges_of(c3);
    AnalysisOptions o;
    // Three failures can only isolate one vertex, which leaves 7 >= 5.
    CHECK(oracle::wrong_subsets(8, edges, 3, 5) == 0);
    CHECK(conditional_wrong_prob(c3, 3, 5, o).p_wrong == 0.0);
    // Requiring all 8 nodes, exactly the 8 vertex-isolating triples are wrong.
    CHECK(oracle::wrong_subsets(8, edges, 3, 8) == 8);
    CHECK(conditional_wrong_prob(c3, 3, 8, o).p_wrong == doctest::Approx(8.0 / 220.0).epsilon(1e-14));
}

TEST_CASE("enumeration matches subset counting for every state") {
    for (const auto& t : {build_complete_hypercube(3), build_ring_lattice(6, 2), build_rooted_tree(8, 3),
                          build_star(5)}) {
        const auto edges = edges_of(t);
        const std::size_t k = default_quorum(t.node_count());
        for (std::size_t i = 0; i <= t.link_count(); ++i) {
            const double expect =
                double(oracle::wrong_subsets(t.node_count(), edges, i, k)) / oracle::choose(edges.size(), i);
            auto est = conditional_wrong_prob(t, i, k, exact_options());
            CHECK(est.method == EstimateMethod::exact);
            CHECK(est.p_wrong == doctest::Approx(expect).epsilon(1e-12));
        }
    }
}

TEST_CASE("hand-derived small topologies") {
    const double q = kFast.down_probability();
    SUBCASE("single link") {
        auto t = custom(2, {{0, 1}}, kFast);
        auto r = partition_tolerance(t, 2, exact_options());
        CHECK(r.p == doctest::Approx(1.0 - q).epsilon(1e-12));
        CHECK(exact_partition_tolerance_bruteforce(t, 2).p == doctest::Approx(1.0 - q).epsilon(1e-14));
    }
    SUBCASE("triangle, k=2: wrong only with all three down") {
        auto t = custom(3, {{0, 1}, {1, 2}, {0, 2}}, kFast);
        CHECK(partition_tolerance(t, 2, exact_options()).wrong_mass == doctest::Approx(q * q * q).epsilon(1e-10));
        CHECK(exact_partition_tolerance_bruteforce(t, 2).wrong_mass == doctest::Approx(q * q * q).epsilon(1e-12));
    }
    SUBCASE("4-ring, k=3: opposite pairs, triples and all four") {
        auto t = build_ring_lattice(4, 2, kFast);
        const double expect = 2 * q * q * (1 - q) * (1 - q) + 4 * q * q * q * (1 - q) + q * q * q * q;
        CHECK(exact_partition_tolerance_bruteforce(t, 3).wrong_mass == doctest::Approx(expect).epsilon(1e-12));
        CHECK(partition_tolerance(t, 3, exact_options()).wrong_mass == doctest::Approx(expect).epsilon(1e-10));
    }
    SUBCASE("4-star, k=3: two or more leaf links down") {
        auto t = build_star(4, kFast);
        const double expect = 3 * q * q * (1 - q) + q * q * q;
        CHECK(exact_partition_tolerance_bruteforce(t, 3).wrong_mass == doctest::Approx(expect).epsilon(1e-12));
        CHECK(partition_tolerance(t, 3, exact_options()).wrong_mass == doctest::Approx(expect).epsilon(1e-10));
    }
    SUBCASE("k=1 is always tolerant") {
        auto t = build_star(6);
        CHECK(partition_tolerance(t, 1, exact_options()).p == 1.0);
        CHECK_FALSE(partition_tolerance(t, 1, exact_options()).t.has_value());
    }
}

TEST_CASE("brute force agrees with the independent oracle") {
    auto spec = RecursionSpec::semi_symmetric({2, 1});
    spec.classes = {make_link_class(0, 5000, 30, 6), make_link_class(1, 3000, 40, 2)};
    for (const auto& t : {build_complete_hypercube(3, kFast), build_rooted_tree(8, 3, kFast), build_recursive(spec)}) {
        const std::size_t k = default_quorum(t.node_count());
        const double expect = oracle::wrong_probability(t.node_count(), edges_of(t), down_probs(t), k);
        CHECK(exact_partition_tolerance_bruteforce(t, k).wrong_mass == doctest::Approx(expect).epsilon(1e-12));
        CHECK(partition_tolerance(t, k, exact_options()).wrong_mass == doctest::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("sampled estimate lies within three standard errors of the exact value") {
    auto t = build_complete_hypercube(3, kFast);
    const auto exact = exact_partition_tolerance_bruteforce(t, 5);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        AnalysisOptions o;
        o.mode = EstimationMode::sampled;
        o.seed = seed;
        o.budget = 4000;
        auto r = partition_tolerance(t, 5, o);
        CHECK(r.method == std::string("sampled"));
        CHECK(std::abs(r.p - exact.p) <= 3 * r.wrong_stderr + 1e-12);
    }
}

TEST_CASE("brute force limit") {
    CHECK_THROWS_AS(exact_partition_tolerance_bruteforce(build_complete_hypercube(4), 9), resource_limit_error);
}

TEST_CASE("exact mode past the enumeration cap") {
    AnalysisOptions o = exact_options();
    o.enumeration_cap = 10;
    CHECK_THROWS_AS(partition_tolerance(build_complete_hypercube(3), 5, o), resource_limit_error);
}

TEST_CASE("hybrid switches per state") {
    AnalysisOptions o;
    o.enumeration_cap = 100;
    o.budget = 200;
    auto r = partition_tolerance(build_complete_hypercube(3, kFast), 5, o);
    CHECK(r.method == std::string("hybrid"));
    CHECK(r.per_state[1].method == EstimateMethod::exact);
    CHECK(r.per_state[6].method == EstimateMethod::sampled);
}

TEST_CASE("zero-probability states are skipped outside exact mode") {
    auto r = partition_tolerance(build_ring_lattice(64, 6, standard_link_class(420, 0)), 33);
    CHECK(r.flushed);
    CHECK(r.per_state.back().method == EstimateMethod::skipped);
    CHECK(std::isnan(r.per_state.back().p_wrong));
}

TEST_CASE("results do not depend on the worker count") {
    auto t = build_ring_lattice(16, 4, kFast);
    AnalysisOptions a;
    a.seed = 3;
    a.budget = 300;
    a.enumeration_cap = 500;
    auto b = a;
    b.workers = 4;
    auto ra = partition_tolerance(t, 9, a);
    auto rb = partition_tolerance(t, 9, b);
    CHECK(ra.wrong_mass == rb.wrong_mass);
    CHECK(ra.t == rb.t);
    for (std::size_t i = 0; i < ra.per_state.size(); ++i) CHECK(ra.per_state[i].p_wrong == rb.per_state[i].p_wrong);
}

TEST_CASE("failure count distribution mixes classes") {
    auto spec = RecursionSpec::semi_symmetric({2, 1});
    auto t = build_recursive(spec);
    auto d = failure_count_distribution(t);
    CHECK(d.per_class.size() == 2);
    CHECK(d.pi.size() == t.link_count() + 1);
    // Convolution of the two binomials
    const auto a = oracle::binomial(8, t.classes()[0].down_probability());
    const auto b = oracle::binomial(4, t.classes()[1].down_probability());
    for (std::size_t i = 0; i <= 12; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j <= i; ++j)
            if (j <= 8 && i - j <= 4) s += a[j] * b[i - j];
        CHECK(d.pi[i] == doctest::Approx(s).epsilon(1e-9));
    }
}

TEST_CASE("minimum repair time") {
    auto cube = build_complete_hypercube(3);
    CHECK(min_repair_time(cube, {}, 5) == 0.0);
    std::vector<LinkIndex> iso;
    for (auto a : cube.neighbors(0)) iso.push_back(a.link);
    CHECK(min_repair_time(cube, iso, 8) == 24.0);

    auto t = build_recursive(RecursionSpec::semi_symmetric({4, 2}));
    std::vector<LinkIndex> intra;
    std::vector<LinkIndex> inter;
    for (LinkIndex i = 0; i < t.link_count(); ++i) (t.link(i).level == 2 ? intra : inter).push_back(i);
    // Without the 3000 km links only 16-node groups remain.
    CHECK(min_repair_time(t, intra, 33) == doctest::Approx(14.4));
    // Without the 5000 km links only 4-node domains remain.
    CHECK(min_repair_time(t, inter, 33) == doctest::Approx(24.0));
}

TEST_CASE("repair time of a single-class topology is its MTTR") {
    auto t = build_complete_hypercube(3, kFast);
    auto bf = exact_partition_tolerance_bruteforce(t, 5);
    REQUIRE(bf.t.has_value());
    CHECK(*bf.t == doctest::Approx(5.0));
    auto r = avg_min_repair_time(t, 5, exact_options());
    REQUIRE(r.has_value());
    CHECK(*r == doctest::Approx(5.0));
}

TEST_CASE("shortest-link repair") {
    // Two 420 km links bridge a 5000 km backbone; failing only them needs
    // the shortest MTTR.
    auto spec = RecursionSpec::semi_symmetric({1, 1});
    spec.classes = {standard_link_class(5000, 0), standard_link_class(420, 1)};
    auto t = build_recursive(spec);
    std::vector<LinkIndex> shortest;
    for (LinkIndex i = 0; i < t.link_count(); ++i)
        if (t.link(i).class_id == 1) shortest.push_back(i);
    CHECK(min_repair_time(t, shortest, 3) == doctest::Approx(2.016));
}

TEST_CASE("neg log of wrong mass") {
    PartitionReport r;
    r.wrong_mass = 1e-5;
    CHECK(r.neg_log10_wrong() == doctest::Approx(5.0));
    r.wrong_mass = 0.0;
    CHECK(std::isinf(r.neg_log10_wrong()));
}

TEST_CASE("exact wrong probability is non-decreasing in the failure count") {
    for (const auto& t : {build_complete_hypercube(3), build_ring_lattice(10, 4), build_rooted_tree(12, 3), build_star(9),
                          build_recursive(RecursionSpec::semi_symmetric({2, 1}))}) {
        for (std::size_t k : {std::size_t{2}, default_quorum(t.node_count()), t.node_count()}) {
            auto r = partition_tolerance(t, k, exact_options());
            for (std::size_t i = 1; i < r.per_state.size(); ++i)
                CHECK(r.per_state[i].p_wrong >= r.per_state[i - 1].p_wrong - 1e-12);
        }
    }
}

TEST_CASE("repair time shrinks with the failure set") {
    std::mt19937_64 rng(21);
    auto t = build_recursive(RecursionSpec::completely_symmetric(2, 3));
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<LinkIndex> failed;
        std::bernoulli_distribution coin(0.5);
        for (LinkIndex i = 0; i < t.link_count(); ++i)
            if (coin(rng)) failed.push_back(i);
        double prev = min_repair_time(t, failed, 33);
        while (!failed.empty()) {
            failed.erase(failed.begin() + static_cast<std::ptrdiff_t>(rng() % failed.size()));
            const double now = min_repair_time(t, failed, 33);
            CHECK(now <= prev);
            prev = now;
        }
        CHECK(prev == 0.0);
    }
}
