#include "osd/digraph.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace osd {

std::size_t Digraph::edge_count() const {
    std::size_t n = 0;
    for (const auto& e : out_) n += e.size();
    return n;
}

std::optional<std::vector<std::uint32_t>> Digraph::find_cycle() const {
    enum : std::uint8_t { kWhite, kGrey, kBlack };
    std::vector<std::uint8_t> colour(out_.size(), kWhite);
    std::vector<std::uint32_t> parent(out_.size(), 0);
    std::vector<std::pair<std::uint32_t, std::size_t>> stack;
    for (std::uint32_t root = 0; root < out_.size(); ++root) {
        if (colour[root] != kWhite) continue;
        colour[root] = kGrey;
        stack.emplace_back(root, 0);
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            if (next == out_[v].size()) {
                colour[v] = kBlack;
                stack.pop_back();
                continue;
            }
            const std::uint32_t w = out_[v][next++];
            if (colour[w] == kGrey) {
                std::vector<std::uint32_t> cycle{v};
                for (std::uint32_t u = v; u != w;) {
                    u = parent[u];
                    cycle.push_back(u);
                }
                std::reverse(cycle.begin(), cycle.end());
                return cycle;
            }
            if (colour[w] == kWhite) {
                colour[w] = kGrey;
                parent[w] = v;
                stack.emplace_back(w, 0);
            }
        }
    }
    return std::nullopt;
}

std::optional<std::vector<std::uint32_t>> Digraph::topological_order() const {
    std::vector<std::size_t> in_degree(out_.size(), 0);
    for (const auto& edges : out_) {
        for (std::uint32_t w : edges) ++in_degree[w];
    }
    std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> ready;
    for (std::uint32_t v = 0; v < out_.size(); ++v) {
        if (in_degree[v] == 0) ready.push(v);
    }
    std::vector<std::uint32_t> order;
    order.reserve(out_.size());
    while (!ready.empty()) {
        const std::uint32_t v = ready.top();
        ready.pop();
        order.push_back(v);
        for (std::uint32_t w : out_[v]) {
            if (--in_degree[w] == 0) ready.push(w);
        }
    }
    if (order.size() != out_.size()) return std::nullopt;
    return order;
}

}  // namespace osd
