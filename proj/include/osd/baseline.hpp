#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "osd/digraph.hpp"
#include "osd/stats.hpp"
#include "osd/system.hpp"

namespace osd {

enum class DepLabel : std::uint8_t { LeftPlus, RightPlus, LeftTimes, RightTimes };

struct DepEdge {
    VarId from;
    VarId to;
    DepLabel label;
};

/// D(S): one l+/r+ edge pair per sum equation, one l×/r× pair per product.
/// Vertices are all registered variables.
struct DepGraph {
    std::size_t vertex_count = 0;
    std::vector<DepEdge> edges;

    Digraph digraph() const;
};

/// P(S): classes of the symmetric closure of r× edges, with a simple edge
/// between classes wherever some l+/r+ edge crosses.
struct PropGraph {
    std::vector<std::uint32_t> class_of;  // vertex -> class index
    std::size_t class_count = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;

    Digraph digraph() const;
};

DepGraph build_dep_graph(const StandardSystem& s);
PropGraph build_prop_graph(const DepGraph& d);
bool has_cycle(const DepGraph& d);
bool has_cycle(const PropGraph& p);

/// Tidén–Arnborg saturation: variable replacement and cancellation are
/// exhausted before every splitting step, and both graphs are checked for
/// cycles after each sum transformation.
DecisionResult ta_unify(const StandardSystem& s, const DecideOptions& opts = {});

}  // namespace osd
