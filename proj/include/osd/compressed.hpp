#pragma once

#include "osd/stats.hpp"
#include "osd/system.hpp"

namespace osd {

/// Polynomial decision procedure for general one-sided distributivity.
/// Lateral paths of the dependency graph carry SLP labels over the label
/// variables; on success `solved` holds a compressed dag-solved form whose
/// SLP store is owned by the result.
DecisionResult decide(const StandardSystem& s, const DecideOptions& opts = {});

}  // namespace osd
