#include "osd/system.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace osd {

Term Equation::rhs_term() const {
    switch (kind) {
        case RhsKind::Var: return Term::var(a);
        case RhsKind::Sum: return Term::plus(Term::var(a), Term::var(b));
        case RhsKind::Product: return Term::times(Term::var(a), Term::var(b));
    }
    return Term::var(a);
}

void StandardSystem::add_var(VarId lhs, VarId rhs, Orientation o) {
    equations.push_back({lhs, RhsKind::Var, rhs, rhs, o});
}

void StandardSystem::add_sum(VarId lhs, VarId a, VarId b, Orientation o) {
    equations.push_back({lhs, RhsKind::Sum, a, b, o});
}

void StandardSystem::add_product(VarId lhs, VarId a, VarId b, Orientation o) {
    equations.push_back({lhs, RhsKind::Product, a, b, o});
}

bool StandardSystem::is_asymmetric() const {
    return std::any_of(equations.begin(), equations.end(),
                       [](const Equation& e) { return e.orient != Orientation::Symmetric; });
}

std::vector<VarId> StandardSystem::label_variables() const {
    std::set<VarId> out;
    for (const auto& e : equations) {
        if (e.kind == RhsKind::Product) out.insert(e.a);
    }
    return {out.begin(), out.end()};
}

std::vector<VarId> StandardSystem::variables() const {
    std::set<VarId> out;
    for (const auto& e : equations) {
        out.insert(e.lhs);
        out.insert(e.a);
        if (e.kind != RhsKind::Var) out.insert(e.b);
    }
    return {out.begin(), out.end()};
}

void StandardSystem::validate() const {
    bool any_sym = false;
    bool any_asym = false;
    for (const auto& e : equations) {
        for (VarId v : {e.lhs, e.a, e.b}) {
            if (v.value >= vars.size()) throw std::invalid_argument("equation mentions an unregistered variable");
        }
        if (e.kind == RhsKind::Var && e.lhs == e.a) {
            throw std::invalid_argument("trivial equation " + to_string(e, vars));
        }
        (e.orient == Orientation::Symmetric ? any_sym : any_asym) = true;
    }
    if (any_sym && any_asym) throw std::invalid_argument("system mixes symmetric and asymmetric equations");
}

namespace {

struct TermHash {
    std::size_t operator()(const Term& t) const noexcept { return t.hash(); }
};

class Namer {
public:
    explicit Namer(StandardSystem& out) : out_(out) {}

    VarId name(const Term& t) {
        if (t.is_var()) return t.var_id();
        if (auto it = names_.find(t); it != names_.end()) return it->second;
        const VarId l = name(t.left());
        const VarId r = name(t.right());
        const VarId fresh = out_.vars.fresh("E");
        emit(fresh, t.op(), l, r);
        names_.emplace(t, fresh);
        return fresh;
    }

    void bind(VarId v, const Term& t) {
        if (t.is_var()) {
            if (t.var_id() != v) out_.add_var(v, t.var_id());
            return;
        }
        if (auto it = names_.find(t); it != names_.end()) {
            if (it->second != v) out_.add_var(v, it->second);
            return;
        }
        const VarId l = name(t.left());
        const VarId r = name(t.right());
        emit(v, t.op(), l, r);
    }

private:
    void emit(VarId v, Op op, VarId l, VarId r) {
        if (op == Op::Plus) {
            out_.add_sum(v, l, r);
        } else {
            out_.add_product(v, l, r);
        }
    }

    StandardSystem& out_;
    std::unordered_map<Term, VarId, TermHash> names_;  // fresh names only, so decomposition is a pure flattening
};

}  // namespace

StandardSystem decompose(VarTable vars, const std::vector<TermEquation>& problem) {
    StandardSystem out;
    out.vars = std::move(vars);
    Namer namer(out);
    for (const auto& eq : problem) {
        if (eq.lhs.is_var()) {
            namer.bind(eq.lhs.var_id(), eq.rhs);
        } else if (eq.rhs.is_var()) {
            namer.bind(eq.rhs.var_id(), eq.lhs);
        } else {
            const VarId l = namer.name(eq.lhs);
            namer.bind(l, eq.rhs);
        }
    }
    return out;
}

StandardSystem symmetric_erasure(const StandardSystem& s) {
    StandardSystem out = s;
    for (auto& e : out.equations) e.orient = Orientation::Symmetric;
    return out;
}

std::string to_string(const Equation& e, const VarTable& vars) {
    std::string rhs = vars.name(e.a);
    if (e.kind != RhsKind::Var) rhs += (e.kind == RhsKind::Sum ? " + " : " * ") + vars.name(e.b);
    const std::string& lhs = vars.name(e.lhs);
    switch (e.orient) {
        case Orientation::Symmetric: return lhs + " = " + rhs;
        case Orientation::Down: return lhs + " =d " + rhs;
        case Orientation::Up: return rhs + " =d " + lhs;
    }
    return lhs + " = " + rhs;
}

}  // namespace osd
