#include <doctest.h>

#include <hypertopo/aggregate.hpp>
#include <hypertopo/error.hpp>
#include <hypertopo/recursion.hpp>

using namespace hypertopo;

TEST_CASE("single domain passes through") {
    auto r = recursive_aggregate({0.97, 11.0, {}});
    CHECK(r.p == doctest::Approx(0.97));
    REQUIRE(r.t.has_value());
    CHECK(*r.t == doctest::Approx(11.0));
}

TEST_CASE("two levels by hand") {
    DomainReliability leaf{0.999, 2.0, {}};
    DomainReliability top{0.99, 24.0, {leaf, leaf, leaf, leaf}};
    auto r = recursive_aggregate(top);
    // 0.01 + 0.99 * 4 * 0.001
    CHECK(1.0 - r.p == doctest::Approx(0.01396).epsilon(1e-12));
    REQUIRE(r.t.has_value());
    CHECK(*r.t == doctest::Approx((24 * 0.01 + 2 * 0.99 * 4 * 0.001) / 0.01396).epsilon(1e-12));
    CHECK(*r.t == doctest::Approx(17.76).epsilon(1e-3));
    CHECK_FALSE(r.clamped);
}

TEST_CASE("perfect domains have no failure mass") {
    DomainReliability leaf{1.0, 3.0, {}};
    auto r = recursive_aggregate({1.0, 5.0, {leaf, leaf}});
    CHECK(r.p == 1.0);
    CHECK_FALSE(r.t.has_value());
}

TEST_CASE("failure sums above one clamp") {
    DomainReliability leaf{0.2, 1.0, {}};
    std::vector<DomainReliability> kids(8, leaf);
    auto r = recursive_aggregate({0.9, 1.0, kids});
    CHECK(r.clamped);
    CHECK(r.p == 0.0);
    CHECK(r.failure_sum > 1.0);
}

TEST_CASE("invalid inputs") {
    CHECK_THROWS_AS(recursive_aggregate({1.5, 1.0, {}}), spec_error);
    CHECK_THROWS_AS(recursive_aggregate({0.5, -1.0, {}}), spec_error);
}

TEST_CASE("hierarchical domains follow the recursion shape") {
    AnalysisOptions o;
    o.mode = EstimationMode::exact;
    auto spec = RecursionSpec::semi_symmetric({2, 2});
    auto tree = hierarchical_domains(spec, o);
    CHECK(tree.children.size() == 4);
    CHECK(tree.children[0].children.empty());
    // A 4-cycle of 5000 km links on top, 3000 km below.
    auto top = partition_tolerance(build_complete_hypercube(2, spec.classes[0]), 3, o);
    auto low = partition_tolerance(build_complete_hypercube(2, spec.classes[1]), 3, o);
    CHECK(tree.p == doctest::Approx(top.p));
    CHECK(tree.children[2].p == doctest::Approx(low.p));
    auto agg = recursive_aggregate(tree);
    const double expect = top.wrong_mass + top.p * 4 * low.wrong_mass;
    CHECK(1.0 - agg.p == doctest::Approx(expect).epsilon(1e-9));
    REQUIRE(agg.t.has_value());
    CHECK(*agg.t > 14.4);
    CHECK(*agg.t < 24.0);
}
