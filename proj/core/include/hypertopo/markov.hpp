#pragma once

#include <cstddef>
#include <vector>

namespace hypertopo {

/// Discrete-time chain over X_0..X_L, the number of invalid links among L
/// links that each fail with probability lambda and are repaired with
/// probability mu per unit time.
struct CountChain {
    std::size_t links = 0;
    double lambda = 0.0;
    double mu = 0.0;

    void validate() const;
};

/// P(X_j | X_i): of the i invalid links, i-m are repaired; of the L-i
/// working links, j-m fail. Summed in log space over
/// m in [max(i+j-L, 0), min(i, j)].
double transition_prob(std::size_t i, std::size_t j, std::size_t links, double lambda,
                       double mu);

/// Row-major (L+1)x(L+1) matrix with entry [i][j] = P(X_j | X_i).
std::vector<double> transition_matrix(const CountChain& chain);

enum class StationaryMethod {
    automatic,
    state_reduction,
    power_iteration,
    binomial_closed_form,
};

const char* to_string(StationaryMethod method) noexcept;

struct StationaryDist {
    std::vector<double> pi;
    StationaryMethod method = StationaryMethod::automatic;
    /// ||pi P - pi||_1 for matrix methods, 0 for the closed form.
    double residual = 0.0;
    /// True if some entries fell below kFlushThreshold and were set to 0.
    bool flushed = false;
};

inline constexpr double kFlushThreshold = 1e-300;

/// Largest L solved by state reduction under `automatic`; larger chains use
/// the binomial closed form.
inline constexpr std::size_t kStateReductionLimit = 1024;

/// Steady state of the count chain. State reduction is the
/// Grassmann-Taksar-Heyman elimination: states are folded away from the top
/// using only additions and divisions, so tiny tail probabilities keep full
/// relative accuracy. Power iteration throws numeric_error carrying the
/// residual when it does not converge.
StationaryDist stationary(const CountChain& chain,
                          StationaryMethod method = StationaryMethod::automatic);

/// ln C(n, k).
double log_choose(std::size_t n, std::size_t k);

/// Binomial(n, q) pmf computed term by term in log space.
std::vector<double> binomial_pmf(std::size_t n, double q);

}  // namespace hypertopo
