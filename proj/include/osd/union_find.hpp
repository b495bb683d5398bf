#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace osd {

/// Union-find where the caller decides which root survives a union.
class UnionFind {
public:
    explicit UnionFind(std::size_t n = 0) { grow(n); }

    void grow(std::size_t n) {
        const std::size_t old = parent_.size();
        if (n <= old) return;
        parent_.resize(n);
        std::iota(parent_.begin() + static_cast<std::ptrdiff_t>(old), parent_.end(), static_cast<std::uint32_t>(old));
    }

    std::size_t size() const { return parent_.size(); }

    std::uint32_t find(std::uint32_t x) {
        std::uint32_t root = x;
        while (parent_[root] != root) root = parent_[root];
        while (parent_[x] != root) {
            const std::uint32_t next = parent_[x];
            parent_[x] = root;
            x = next;
        }
        return root;
    }

    /// Makes `survivor` the root of the merged set. Both must be roots.
    void attach(std::uint32_t absorbed, std::uint32_t survivor) { parent_[absorbed] = survivor; }

    bool is_root(std::uint32_t x) const { return parent_[x] == x; }

private:
    std::vector<std::uint32_t> parent_;
};

}  // namespace osd
