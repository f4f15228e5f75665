#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace hypertopo {

/// Disjoint-set forest with union by size and path halving. Tracks the
/// size of the largest set so wrong-partition checks are O(1) after the
/// unions.
class UnionFind {
public:
    explicit UnionFind(std::size_t n = 0) { reset(n); }

    void reset(std::size_t n) {
        parent_.resize(n);
        size_.assign(n, 1);
        std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
        largest_ = n == 0 ? 0 : 1;
    }

    std::uint32_t find(std::uint32_t x) noexcept {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(std::uint32_t a, std::uint32_t b) noexcept {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        if (size_[a] > largest_) largest_ = size_[a];
        return true;
    }

    std::uint32_t set_size(std::uint32_t x) noexcept { return size_[find(x)]; }
    std::uint32_t largest() const noexcept { return largest_; }
    std::size_t size() const noexcept { return parent_.size(); }

private:
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint32_t> size_;
    std::uint32_t largest_ = 0;
};

}  // namespace hypertopo
