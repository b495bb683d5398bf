#include "osd/solved_form.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>
#include <unordered_set>

#include "osd/digraph.hpp"

namespace osd {

namespace {

Term substitute(const Term& t, const std::function<Term(VarId)>& image,
                std::unordered_map<const void*, Term>& memo) {
    if (t.is_var()) return image(t.var_id());
    if (auto it = memo.find(t.identity()); it != memo.end()) return it->second;
    Term l = substitute(t.left(), image, memo);
    Term r = substitute(t.right(), image, memo);
    Term out = (l.identity() == t.left().identity() && r.identity() == t.right().identity())
                   ? t
                   : Term::apply(t.op(), std::move(l), std::move(r));
    memo.emplace(t.identity(), out);
    return out;
}

void collect_vars(const Term& t, std::vector<VarId>& out) {
    std::unordered_set<const void*> seen;
    std::vector<Term> stack{t};
    while (!stack.empty()) {
        Term cur = stack.back();
        stack.pop_back();
        if (cur.is_var()) {
            out.push_back(cur.var_id());
        } else if (seen.insert(cur.identity()).second) {
            stack.push_back(cur.left());
            stack.push_back(cur.right());
        }
    }
}

}  // namespace

Term Substitution::apply(const Term& t) const {
    std::unordered_map<const void*, Term> memo;
    return substitute(
        t,
        [this](VarId v) {
            auto it = bindings.find(v);
            return it == bindings.end() ? Term::var(v) : it->second;
        },
        memo);
}

Substitution Substitution::normalized(std::uint64_t cap) const {
    Substitution out;
    for (const auto& [v, t] : bindings) out.bindings.emplace(v, normalize(t, cap));
    return out;
}

std::size_t SolvedForm::lateral_count() const {
    return static_cast<std::size_t>(
        std::count_if(bindings.begin(), bindings.end(), [](const SolvedBinding& b) { return b.is_lateral(); }));
}

SolvedForm as_solved_form(const StandardSystem& s) {
    SolvedForm f;
    f.vars = s.vars;
    for (const auto& e : s.equations) f.bindings.push_back({e.lhs, e.rhs_term(), {}, {}});
    return f;
}

bool is_dag_solved(const SolvedForm& f) {
    Digraph g(f.vars.size());
    std::vector<char> bound(f.vars.size(), 0);
    std::vector<VarId> deps;
    for (const auto& b : f.bindings) {
        if (b.lhs.value >= f.vars.size() || bound[b.lhs.value]) return false;
        bound[b.lhs.value] = 1;
        deps.clear();
        if (b.is_lateral()) {
            if (!f.slps) return false;
            deps.push_back(b.tail);
            const auto ts = f.slps->terminals(b.label);
            deps.insert(deps.end(), ts.begin(), ts.end());
        } else {
            collect_vars(*b.term, deps);
        }
        for (VarId d : deps) {
            if (d.value >= f.vars.size()) return false;
            g.add_edge(b.lhs.value, d.value);
        }
    }
    return !g.has_cycle();
}

bool is_dag_solved(const StandardSystem& s) { return is_dag_solved(as_solved_form(s)); }

Substitution materialize(const SolvedForm& f, std::uint64_t cap) {
    if (!is_dag_solved(f)) throw std::invalid_argument("bindings are not in dag-solved form");
    std::unordered_map<VarId, const SolvedBinding*> by_lhs;
    for (const auto& b : f.bindings) by_lhs.emplace(b.lhs, &b);

    std::unordered_map<VarId, Term> resolved;
    std::unordered_map<const void*, Term> memo;
    std::function<Term(VarId)> resolve = [&](VarId v) -> Term {
        if (auto it = resolved.find(v); it != resolved.end()) return it->second;
        auto bit = by_lhs.find(v);
        if (bit == by_lhs.end()) return Term::var(v);
        const SolvedBinding& b = *bit->second;
        Term out = Term::var(v);
        if (b.is_lateral()) {
            const BigNat& len = f.slps->length(b.label);
            if (len > cap) throw MaterializationError("lateral path longer than the materialization cap");
            const auto word = f.slps->expand(b.label, static_cast<std::size_t>(cap));
            out = resolve(b.tail);
            for (auto it = word.rbegin(); it != word.rend(); ++it) {
                out = Term::times(resolve(*it), out);
                if (out.tree_size() > cap) throw MaterializationError("binding exceeds the materialization cap");
            }
        } else {
            out = substitute(*b.term, resolve, memo);
        }
        if (out.tree_size() > cap) throw MaterializationError("binding exceeds the materialization cap");
        resolved.emplace(v, out);
        return out;
    };

    Substitution sigma;
    for (const auto& b : f.bindings) sigma.bindings.emplace(b.lhs, resolve(b.lhs));
    return sigma;
}

Substitution extract_unifier(const StandardSystem& s, std::uint64_t cap) {
    return materialize(as_solved_form(s), cap);
}

bool VerifyReport::not_materializable() const {
    return std::find(verdicts.begin(), verdicts.end(), EquationVerdict::NotMaterializable) != verdicts.end();
}

VerifyReport verify_unifier(const StandardSystem& problem, const Substitution& sigma, std::uint64_t cap) {
    VerifyReport report;
    for (std::size_t i = 0; i < problem.equations.size(); ++i) {
        const Equation& e = problem.equations[i];
        EquationVerdict verdict = EquationVerdict::Holds;
        try {
            const Term lhs = sigma.apply(e.lhs_term());
            const Term rhs = sigma.apply(e.rhs_term());
            if (!e_equal(lhs, rhs, cap)) {
                verdict = EquationVerdict::Fails;
            } else if (e.orient == Orientation::Down && !is_normal(rhs)) {
                verdict = EquationVerdict::Reducible;
            } else if (e.orient == Orientation::Up && !is_normal(lhs)) {
                verdict = EquationVerdict::Reducible;
            }
        } catch (const MaterializationError&) {
            verdict = EquationVerdict::NotMaterializable;
        }
        report.verdicts.push_back(verdict);
        if (verdict != EquationVerdict::Holds && !report.first_failure) report.first_failure = i;
    }
    return report;
}

const char* to_string(EquationVerdict v) {
    switch (v) {
        case EquationVerdict::Holds: return "holds";
        case EquationVerdict::Fails: return "fails";
        case EquationVerdict::Reducible: return "reducible";
        case EquationVerdict::NotMaterializable: return "not-materializable";
    }
    return "?";
}

}  // namespace osd
