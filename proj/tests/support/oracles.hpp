#pragma once

// Independent reference implementations used only by tests. Nothing here
// calls into the library's numeric code.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace oracle {

// Binomial pmf by the ratio recurrence pmf[k+1] = pmf[k] (n-k)/(k+1) q/(1-q),
// rescaled at the end so it never touches lgamma.
inline std::vector<double> binomial(std::size_t n, double q) {
    std::vector<long double> w(n + 1);
    // Start at the mode to keep the recurrence well conditioned.
    const auto mode = static_cast<std::size_t>(std::floor((n + 1) * q));
    const std::size_t m = mode > n ? n : mode;
    const long double r = static_cast<long double>(q) / (1.0L - q);
    w[m] = 1.0L;
    for (std::size_t k = m; k < n; ++k) w[k + 1] = w[k] * (n - k) / (k + 1) * r;
    for (std::size_t k = m; k > 0; --k) w[k - 1] = w[k] * k / ((n - k + 1) * r);
    long double s = 0.0L;
    for (auto x : w) s += x;
    std::vector<double> out(n + 1);
    for (std::size_t k = 0; k <= n; ++k) out[k] = static_cast<double>(w[k] / s);
    return out;
}

using Edge = std::pair<std::uint32_t, std::uint32_t>;

// Largest component size with `up[e]` marking working edges, plain DFS.
inline std::size_t largest_component(std::size_t n, const std::vector<Edge>& edges,
                                     const std::vector<bool>& up) {
    std::vector<std::vector<std::uint32_t>> adj(n);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        if (!up[e]) continue;
        adj[edges[e].first].push_back(edges[e].second);
        adj[edges[e].second].push_back(edges[e].first);
    }
    std::vector<bool> seen(n, false);
    std::size_t best = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::size_t size = 0;
        std::vector<std::uint32_t> stack{static_cast<std::uint32_t>(s)};
        seen[s] = true;
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            ++size;
            for (auto w : adj[v]) {
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
            }
        }
        best = std::max(best, size);
    }
    return best;
}

// P{largest component < k} with every edge down independently with q[e].
inline double wrong_probability(std::size_t n, const std::vector<Edge>& edges,
                                const std::vector<double>& q, std::size_t k) {
    const std::size_t l = edges.size();
    double total = 0.0;
    std::vector<bool> up(l);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << l); ++mask) {
        double w = 1.0;
        for (std::size_t e = 0; e < l; ++e) {
            const bool down = (mask >> e) & 1u;
            up[e] = !down;
            w *= down ? q[e] : 1.0 - q[e];
        }
        if (largest_component(n, edges, up) < k) total += w;
    }
    return total;
}

// Number of i-subsets of edges whose removal leaves largest component < k.
inline std::uint64_t wrong_subsets(std::size_t n, const std::vector<Edge>& edges,
                                   std::size_t i, std::size_t k) {
    const std::size_t l = edges.size();
    std::uint64_t count = 0;
    std::vector<bool> up(l);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << l); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcountll(mask)) != i) continue;
        for (std::size_t e = 0; e < l; ++e) up[e] = !((mask >> e) & 1u);
        if (largest_component(n, edges, up) < k) ++count;
    }
    return count;
}

inline double choose(std::size_t n, std::size_t k) {
    double c = 1.0;
    for (std::size_t j = 1; j <= k; ++j) c = c * static_cast<double>(n - k + j) / j;
    return c;
}

}  // namespace oracle
