#include "hypertopo/markov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hypertopo/error.hpp"

namespace hypertopo {

namespace {

constexpr std::size_t kLogFactorialTable = 1 << 16;

const std::vector<double>& log_factorial_table() {
    static const std::vector<double> table = [] {
        std::vector<double> t(kLogFactorialTable);
        for (std::size_t i = 0; i < t.size(); ++i) t[i] = std::lgamma(static_cast<double>(i) + 1.0);
        return t;
    }();
    return table;
}

double log_factorial(std::size_t n) {
    if (n < kLogFactorialTable) return log_factorial_table()[n];
    return std::lgamma(static_cast<double>(n) + 1.0);
}

// e * ln(p) with 0 * ln(0) = 0.
double xlogy(std::size_t e, double log_p) {
    return e == 0 ? 0.0 : static_cast<double>(e) * log_p;
}

std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0.0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

double residual_l1(const std::vector<double>& pi, const std::vector<double>& matrix) {
    const std::size_t n = pi.size();
    double res = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += pi[i] * matrix[i * n + j];
        res += std::abs(s - pi[j]);
    }
    return res;
}

bool flush_tiny(std::vector<double>& pi) {
    bool flushed = false;
    for (auto& p : pi) {
        if (p != 0.0 && p < kFlushThreshold) {
            p = 0.0;
            flushed = true;
        }
    }
    return flushed;
}

void normalize(std::vector<double>& pi) {
    double sum = 0.0;
    for (double p : pi) sum += p;
    if (!(sum > 0.0) || !std::isfinite(sum)) {
        throw numeric_error("stationary vector cannot be normalised", sum);
    }
    for (auto& p : pi) p /= sum;
}

std::vector<double> solve_state_reduction(std::vector<double> m, std::size_t n) {
    for (std::size_t k = n - 1; k >= 1; --k) {
        double s = 0.0;
        for (std::size_t j = 0; j < k; ++j) s += m[k * n + j];
        if (!(s > 0.0)) {
            throw numeric_error("state " + std::to_string(k) + " cannot reach lower states", s);
        }
        for (std::size_t i = 0; i < k; ++i) m[i * n + k] /= s;
        for (std::size_t i = 0; i < k; ++i) {
            const double f = m[i * n + k];
            if (f == 0.0) continue;
            double* row = &m[i * n];
            const double* src = &m[k * n];
            for (std::size_t j = 0; j < k; ++j) row[j] += f * src[j];
        }
    }
    std::vector<double> pi(n, 0.0);
    pi[0] = 1.0;
    for (std::size_t k = 1; k < n; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < k; ++i) s += pi[i] * m[i * n + k];
        pi[k] = s;
    }
    normalize(pi);
    return pi;
}

std::vector<double> solve_power_iteration(const std::vector<double>& m, std::size_t n,
                                          double& residual) {
    constexpr std::size_t kMaxIterations = 200000;
    constexpr double kTolerance = 1e-15;
    std::vector<double> pi(n, 0.0);
    std::vector<double> next(n);
    pi[0] = 1.0;
    for (std::size_t it = 0; it < kMaxIterations; ++it) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            if (pi[i] == 0.0) continue;
            const double* row = &m[i * n];
            for (std::size_t j = 0; j < n; ++j) next[j] += pi[i] * row[j];
        }
        double delta = 0.0;
        for (std::size_t j = 0; j < n; ++j) delta += std::abs(next[j] - pi[j]);
        pi.swap(next);
        if (delta < kTolerance) {
            residual = delta;
            return pi;
        }
        residual = delta;
    }
    throw numeric_error("power iteration did not converge", residual);
}

}  // namespace

void CountChain::validate() const {
    if (links == 0) throw spec_error("count chain needs at least one link");
    if (!(lambda > 0.0 && lambda < 1.0)) throw spec_error("lambda must lie in (0, 1)");
    if (!(mu > 0.0 && mu <= 1.0)) throw spec_error("mu must lie in (0, 1]");
}

double log_choose(std::size_t n, std::size_t k) {
    if (k > n) return -std::numeric_limits<double>::infinity();
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

std::vector<double> binomial_pmf(std::size_t n, double q) {
    std::vector<double> pmf(n + 1, 0.0);
    if (q <= 0.0) {
        pmf[0] = 1.0;
        return pmf;
    }
    if (q >= 1.0) {
        pmf[n] = 1.0;
        return pmf;
    }
    const double lq = std::log(q);
    const double lp = std::log1p(-q);
    for (std::size_t k = 0; k <= n; ++k) {
        pmf[k] = std::exp(log_choose(n, k) + xlogy(k, lq) + xlogy(n - k, lp));
    }
    return pmf;
}

double transition_prob(std::size_t i, std::size_t j, std::size_t links, double lambda,
                       double mu) {
    if (i > links || j > links) {
        throw spec_error("transition_prob: state index outside [0, " + std::to_string(links) + "]");
    }
    const double log_mu = std::log(mu);
    const double log_keep = std::log1p(-mu);
    const double log_lambda = std::log(lambda);
    const double log_survive = std::log1p(-lambda);
    const std::size_t m_lo = i + j > links ? i + j - links : 0;
    const std::size_t m_hi = std::min(i, j);
    double total = 0.0;
    for (std::size_t m = m_lo; m <= m_hi; ++m) {
        // m of the i invalid links stay invalid, j-m of the L-i working fail.
        if (mu >= 1.0 && m > 0) continue;
        const double log_term = log_choose(i, m) + xlogy(i - m, log_mu) + xlogy(m, log_keep) +
                                log_choose(links - i, j - m) + xlogy(j - m, log_lambda) +
                                xlogy(links - i - j + m, log_survive);
        total += std::exp(log_term);
    }
    return total;
}

std::vector<double> transition_matrix(const CountChain& chain) {
    chain.validate();
    const std::size_t n = chain.links + 1;
    std::vector<double> m(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        // Row i: (links left unrepaired) + (new failures), two independent
        // binomials.
        const auto unrepaired = binomial_pmf(i, 1.0 - chain.mu);
        const auto failures = binomial_pmf(chain.links - i, chain.lambda);
        const auto row = convolve(unrepaired, failures);
        std::copy(row.begin(), row.end(), m.begin() + static_cast<std::ptrdiff_t>(i * n));
    }
    return m;
}

const char* to_string(StationaryMethod method) noexcept {
    switch (method) {
        case StationaryMethod::automatic: return "automatic";
        case StationaryMethod::state_reduction: return "state_reduction";
        case StationaryMethod::power_iteration: return "power_iteration";
        case StationaryMethod::binomial_closed_form: return "binomial_closed_form";
    }
    return "automatic";
}

StationaryDist stationary(const CountChain& chain, StationaryMethod method) {
    chain.validate();
    if (method == StationaryMethod::automatic) {
        method = chain.links <= kStateReductionLimit ? StationaryMethod::state_reduction
                                                     : StationaryMethod::binomial_closed_form;
    }
    StationaryDist out;
    out.method = method;
    const std::size_t n = chain.links + 1;
    switch (method) {
        case StationaryMethod::binomial_closed_form:
            out.pi = binomial_pmf(chain.links, chain.lambda / (chain.lambda + chain.mu));
            break;
        case StationaryMethod::state_reduction: {
            auto m = transition_matrix(chain);
            out.pi = solve_state_reduction(m, n);
            out.residual = residual_l1(out.pi, m);
            break;
        }
        case StationaryMethod::power_iteration: {
            const auto m = transition_matrix(chain);
            double residual = 0.0;
            out.pi = solve_power_iteration(m, n, residual);
            out.residual = residual_l1(out.pi, m);
            break;
        }
        case StationaryMethod::automatic:
            break;
    }
    out.flushed = flush_tiny(out.pi);
    return out;
}

}  // namespace hypertopo
