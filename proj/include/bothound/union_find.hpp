#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace bothound {

// Disjoint-set union with iterative path compression and union by rank.
class UnionFind {
public:
    std::size_t add() {
        parent_.push_back(parent_.size());
        rank_.push_back(0);
        return parent_.size() - 1;
    }

    std::size_t find(std::size_t x) const {
        std::size_t root = x;
        while (parent_[root] != root) root = parent_[root];
        while (parent_[x] != root) {
            const std::size_t next = parent_[x];
            parent_[x] = root;
            x = next;
        }
        return root;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
    }

    bool connected(std::size_t a, std::size_t b) const { return find(a) == find(b); }

    std::size_t size() const { return parent_.size(); }

private:
    // Compression rewrites parents but never the represented partition.
    mutable std::vector<std::size_t> parent_;
    std::vector<std::uint8_t> rank_;
};

}  // namespace bothound
