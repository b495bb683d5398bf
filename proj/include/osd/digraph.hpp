#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace osd {

/// Plain adjacency-list digraph over dense vertex ids. Parallel edges and
/// self-loops are allowed; a self-loop is a cycle.
class Digraph {
public:
    explicit Digraph(std::size_t n = 0) : out_(n) {}

    std::size_t size() const { return out_.size(); }
    void add_edge(std::uint32_t from, std::uint32_t to) { out_[from].push_back(to); }
    const std::vector<std::uint32_t>& out(std::uint32_t v) const { return out_[v]; }
    std::size_t edge_count() const;

    /// Some directed cycle as a vertex sequence v0 → v1 → … → v0 (v0 not
    /// repeated), or nullopt when acyclic.
    std::optional<std::vector<std::uint32_t>> find_cycle() const;
    bool has_cycle() const { return find_cycle().has_value(); }

    /// Sources first; nullopt when cyclic. Ties break toward smaller ids.
    std::optional<std::vector<std::uint32_t>> topological_order() const;

private:
    std::vector<std::vector<std::uint32_t>> out_;
};

}  // namespace osd
