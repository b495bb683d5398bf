#pragma once

#include "osd/solved_form.hpp"
#include "osd/stats.hpp"
#include "osd/system.hpp"

namespace osd {

/// Asymmetric unification for R = {X×(Y+Z) → X×Y + X×Z}, E = ∅. Accepts
/// symmetric equations as unconstrained. On success `solved` is a
/// dag-solved form whose back-substitution, once normalized, leaves every
/// constrained side irreducible.
DecisionResult asym_unify(const StandardSystem& s, const DecideOptions& opts = {});

/// Normalized unifier of a successful asym_unify result.
Substitution asym_unifier(const DecisionResult& r, std::uint64_t cap = kDefaultMaterializationCap);

/// σ unifies every equation and leaves each constrained side irreducible.
bool check_asymmetry(const Substitution& sigma, const StandardSystem& s,
                     std::uint64_t cap = kDefaultMaterializationCap);

Substitution normalize_substitution(const Substitution& sigma, std::uint64_t cap = kDefaultMaterializationCap);

}  // namespace osd
