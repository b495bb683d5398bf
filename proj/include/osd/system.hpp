#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "osd/term.hpp"
#include "osd/var_table.hpp"

namespace osd {

enum class RhsKind : std::uint8_t { Var, Sum, Product };

/// Asymmetric equations carry which side must stay irreducible under the
/// unifier: Down is `lhs =d rhs`, Up is `rhs =d lhs`.
enum class Orientation : std::uint8_t { Symmetric, Down, Up };

struct Equation {
    VarId lhs;
    RhsKind kind = RhsKind::Var;
    VarId a;
    VarId b;  // unused for RhsKind::Var
    Orientation orient = Orientation::Symmetric;

    Term rhs_term() const;
    Term lhs_term() const { return Term::var(lhs); }
};

class SignatureError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct StandardSystem {
    VarTable vars;
    std::vector<Equation> equations;

    void add_var(VarId lhs, VarId rhs, Orientation o = Orientation::Symmetric);
    void add_sum(VarId lhs, VarId a, VarId b, Orientation o = Orientation::Symmetric);
    void add_product(VarId lhs, VarId a, VarId b, Orientation o = Orientation::Symmetric);

    bool is_asymmetric() const;
    /// Variables in the left argument of some product, ascending.
    std::vector<VarId> label_variables() const;
    /// Variables occurring in some equation, ascending.
    std::vector<VarId> variables() const;
    std::size_t size() const { return equations.size(); }

    /// Throws std::invalid_argument on a malformed equation or a mix of
    /// symmetric and asymmetric equations.
    void validate() const;
};

struct TermEquation {
    Term lhs;
    Term rhs;
};

/// Flattens arbitrary equations into standard form. Each distinct
/// non-variable subterm gets one name; names are fresh unless an equation
/// `A = t` lets A name t directly.
StandardSystem decompose(VarTable vars, const std::vector<TermEquation>& problem);

/// Same system with every orientation dropped.
StandardSystem symmetric_erasure(const StandardSystem& s);

std::string to_string(const Equation& e, const VarTable& vars);

}  // namespace osd
