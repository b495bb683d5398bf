#pragma once

#include <optional>
#include <string>

#include "osd/stats.hpp"
#include "osd/system.hpp"

namespace osd {

/// A system whose only left product factor is `t`, and `t` occurs nowhere
/// else, so every product X = t×Y reads X = h(Y).
struct TypedSystem {
    StandardSystem system;
    VarId t;
};

/// nullopt when the system is outside the single-homomorphism fragment;
/// `why` then names the clash.
std::optional<TypedSystem> typecheck(const StandardSystem& s, std::string* why = nullptr);

/// Decision procedure for the typed fragment. Path labels are the exponents
/// of h, kept as big integers.
DecisionResult decide_hom(const TypedSystem& t, const DecideOptions& opts = {});

/// Smallest-effort SLP for `symbol` repeated `count` times (count >= 1),
/// built by binary doubling.
SlpId power(SlpStore& store, VarId symbol, const BigNat& count);

}  // namespace osd
