#include <doctest.h>

#include <hypertopo/error.hpp>
#include <hypertopo/link_class.hpp>
#include <hypertopo/markov.hpp>

#include <cmath>

#include "../support/oracles.hpp"

using namespace hypertopo;

namespace {

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
    REQUIRE(a.size() == b.size());
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// Direct sum over m of the transition formula, in plain doubles.
double direct_transition(std::size_t i, std::size_t j, std::size_t l, double lam, double mu) {
    double total = 0.0;
    for (std::size_t m = 0; m <= std::min(i, j); ++m) {
        if (j - m > l - i) continue;
        total += oracle::choose(i, m) * std::pow(mu, double(i - m)) * std::pow(1 - mu, double(m)) *
                 oracle::choose(l - i, j - m) * std::pow(lam, double(j - m)) *
                 std::pow(1 - lam, double(l - i - j + m));
    }
    return total;
}

}  // namespace

TEST_CASE("transition probability edge cases") {
    const double lam = 1.0 / 2190, mu = 1.0 / 24;
    CHECK(transition_prob(0, 0, 12, lam, mu) == doctest::Approx(std::pow(1 - lam, 12)).epsilon(1e-13));
    CHECK(transition_prob(1, 0, 1, lam, mu) == doctest::Approx(mu).epsilon(1e-13));
    CHECK(transition_prob(0, 1, 1, lam, mu) == doctest::Approx(lam).epsilon(1e-13));
    CHECK_THROWS_AS(transition_prob(3, 0, 2, lam, mu), spec_error);
}

TEST_CASE("transition rows are stochastic and match the direct sum") {
    for (const auto& c : standard_link_classes()) {
        for (std::size_t l : {1u, 5u, 12u, 40u}) {
            for (std::size_t i = 0; i <= l; ++i) {
                double row = 0.0;
                for (std::size_t j = 0; j <= l; ++j) {
                    const double p = transition_prob(i, j, l, c.lambda(), c.mu());
                    row += p;
                    CHECK(p == doctest::Approx(direct_transition(i, j, l, c.lambda(), c.mu()))
                                   .epsilon(1e-10));
                }
                CHECK(row == doctest::Approx(1.0).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("transition matrix equals the formula") {
    CountChain chain{20, 0.03, 0.2};
    auto m = transition_matrix(chain);
    for (std::size_t i = 0; i <= 20; ++i)
        for (std::size_t j = 0; j <= 20; ++j)
            CHECK(m[i * 21 + j] == doctest::Approx(transition_prob(i, j, 20, 0.03, 0.2)).epsilon(1e-11));
}

TEST_CASE("stationary edge cases") {
    const double lam = 0.01, mu = 0.3;
    auto s = stationary({1, lam, mu}, StationaryMethod::state_reduction);
    CHECK(s.pi[0] == doctest::Approx(mu / (lam + mu)).epsilon(1e-14));
    CHECK(s.pi[1] == doctest::Approx(lam / (lam + mu)).epsilon(1e-14));

    auto half = stationary({12, 0.2, 0.2}, StationaryMethod::state_reduction);
    for (std::size_t i = 0; i <= 12; ++i) CHECK(half.pi[i] == doctest::Approx(oracle::choose(12, i) / 4096).epsilon(1e-12));
}

TEST_CASE("stationary solvers agree with the binomial oracle") {
    for (const auto& c : standard_link_classes()) {
        for (std::size_t l : {1u, 12u, 192u}) {
            const auto ref = oracle::binomial(l, c.lambda() / (c.lambda() + c.mu()));
            CountChain chain{l, c.lambda(), c.mu()};
            auto gth = stationary(chain, StationaryMethod::state_reduction);
            CHECK(sup_diff(gth.pi, ref) <= 1e-10);
            CHECK(gth.residual < 1e-12);
            auto closed = stationary(chain, StationaryMethod::binomial_closed_form);
            CHECK(sup_diff(closed.pi, ref) <= 1e-10);
            if (l <= 12) {
                auto power = stationary(chain, StationaryMethod::power_iteration);
                CHECK(sup_diff(power.pi, ref) <= 1e-10);
            }
        }
    }
    auto s = stationary({192, 4.5662e-4, 4.1667e-2});
    CHECK(sup_diff(s.pi, oracle::binomial(192, 4.5662e-4 / (4.5662e-4 + 4.1667e-2))) <= 1e-10);
}

TEST_CASE("tiny stationary mass is flushed with a flag") {
    auto s = stationary({192, 1.0 / 26070, 1.0 / 2.016});
    CHECK(s.flushed);
    CHECK(s.pi.back() == 0.0);
    double total = 0.0;
    for (double p : s.pi) total += p;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("automatic method switches to the closed form for large chains") {
    auto s = stationary({kStateReductionLimit + 1, 0.001, 0.05});
    CHECK(s.method == StationaryMethod::binomial_closed_form);
    auto t = stationary({10, 0.001, 0.05});
    CHECK(t.method == StationaryMethod::state_reduction);
}

TEST_CASE("count chain validation") {
    CHECK_THROWS_AS(stationary({0, 0.1, 0.1}), spec_error);
    CHECK_THROWS_AS(stationary({3, 0.0, 0.1}), spec_error);
    CHECK_THROWS_AS(stationary({3, 0.1, 1.5}), spec_error);
    CHECK_NOTHROW(stationary({3, 0.1, 1.0}));
}

TEST_CASE("binomial pmf helper") {
    auto p = binomial_pmf(30, 0.3);
    CHECK(sup_diff(p, oracle::binomial(30, 0.3)) < 1e-14);
    CHECK(binomial_pmf(5, 0.0)[0] == 1.0);
    CHECK(binomial_pmf(5, 1.0)[5] == 1.0);
}

TEST_CASE("rows stay stochastic up to 300 links") {
    for (const auto& c : standard_link_classes()) {
        auto m = transition_matrix({300, c.lambda(), c.mu()});
        for (std::size_t i = 0; i <= 300; i += 7) {
            double row = 0.0;
            for (std::size_t j = 0; j <= 300; ++j) row += m[i * 301 + j];
            CHECK(row == doctest::Approx(1.0).epsilon(1e-12));
        }
        for (std::size_t i : {0u, 150u, 300u}) {
            double row = 0.0;
            for (std::size_t j = 0; j <= 300; ++j) row += transition_prob(i, j, 300, c.lambda(), c.mu());
            CHECK(row == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}
