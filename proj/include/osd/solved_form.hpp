#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "osd/slp.hpp"
#include "osd/system.hpp"
#include "osd/term.hpp"

namespace osd {

/// Idempotent when produced by extract_unifier / materialize.
struct Substitution {
    std::map<VarId, Term> bindings;

    Term apply(const Term& t) const;
    /// Bindings normalized; the result's images are normal forms.
    Substitution normalized(std::uint64_t cap = kDefaultMaterializationCap) const;
};

/// One binding of a solved form: either `lhs -> term`, or a compressed
/// lateral path `lhs -> l1 × (l2 × (… × tail))` where l1 l2 … is the string
/// produced by `label`.
struct SolvedBinding {
    VarId lhs;
    std::optional<Term> term;
    SlpId label{};
    VarId tail{};

    bool is_lateral() const { return !term.has_value(); }
};

struct SolvedForm {
    VarTable vars;
    std::vector<SolvedBinding> bindings;
    std::shared_ptr<const SlpStore> slps;  // set iff some binding is lateral

    std::size_t lateral_count() const;
};

SolvedForm as_solved_form(const StandardSystem& s);

/// Distinct left-hand sides and an acyclic "lhs depends on rhs variable"
/// relation. Lateral bindings depend on their tail and every terminal of
/// their label.
bool is_dag_solved(const SolvedForm& f);
bool is_dag_solved(const StandardSystem& s);

/// Back-substitutes a dag-solved form. Throws std::invalid_argument if the
/// form is not dag-solved, MaterializationError above `cap` tree nodes.
Substitution materialize(const SolvedForm& f, std::uint64_t cap = kDefaultMaterializationCap);
Substitution extract_unifier(const StandardSystem& s, std::uint64_t cap = kDefaultMaterializationCap);

enum class EquationVerdict { Holds, Fails, Reducible, NotMaterializable };

struct VerifyReport {
    std::vector<EquationVerdict> verdicts;  // one per problem equation
    std::optional<std::size_t> first_failure;

    bool ok() const { return !first_failure.has_value(); }
    bool not_materializable() const;
};

/// Checks σ(lhs) =E σ(rhs) for every equation; for asymmetric equations the
/// instantiated irreducible side must also be in normal form.
VerifyReport verify_unifier(const StandardSystem& problem, const Substitution& sigma,
                            std::uint64_t cap = kDefaultMaterializationCap);

const char* to_string(EquationVerdict v);

}  // namespace osd
