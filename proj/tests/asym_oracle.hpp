#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "osd/system.hpp"
#include "osd/generators.hpp"
#include "reference_rewrite.hpp"

namespace osd::testing {

// Normal forms of depth <= 1 over {a, b, c} and depth <= 2 over {a}, so the
// instantiated sides have depth <= 3. Registers a, b, c in `vars`; the
// problems searched must not use those names.
inline std::vector<Term> term_pool(VarTable& vars) {
    std::vector<Term> atoms;
    for (const char* name : {"a", "b", "c"}) atoms.push_back(Term::var(vars.intern(name)));
    std::vector<Term> pool = atoms;
    for (const auto& l : atoms) {
        for (const auto& r : atoms) {
            pool.push_back(Term::plus(l, r));
            pool.push_back(Term::times(l, r));
        }
    }
    std::vector<Term> unary = {atoms[0]};
    for (const auto& l : std::vector<Term>(unary)) {
        for (const auto& r : std::vector<Term>(unary)) {
            unary.push_back(Term::plus(l, r));
            unary.push_back(Term::times(l, r));
        }
    }
    for (const auto& l : unary) {
        for (const auto& r : unary) {
            for (const Term& t : {Term::plus(l, r), Term::times(l, r)}) {
                const Term n = reference_normal_form(t);
                if (std::find(pool.begin(), pool.end(), n) == pool.end()) pool.push_back(n);
            }
        }
    }
    return pool;
}

// Searches normalized substitutions: variables that are never a variable side
// range over the pool, the rest are computed from their defining equation.
// Restricting to normalized substitutions loses no asymmetric unifier.
inline std::optional<std::map<VarId, Term>> brute_force(const StandardSystem& s, const std::vector<Term>& pool) {
    std::vector<const Equation*> defining;
    std::set<VarId> derived;
    std::set<VarId> all;
    for (const auto& e : s.equations) {
        all.insert(e.lhs);
        all.insert(e.a);
        if (e.kind != RhsKind::Var) all.insert(e.b);
    }
    // Defining equations in dependency order; a variable whose term side
    // needs itself stays free.
    for (bool progress = true; progress;) {
        progress = false;
        for (const auto& e : s.equations) {
            if (derived.count(e.lhs)) continue;
            std::set<VarId> uses = {e.a};
            if (e.kind != RhsKind::Var) uses.insert(e.b);
            bool ready = true;
            for (VarId u : uses) {
                bool later_defined = false;
                for (const auto& f : s.equations) later_defined |= f.lhs == u && !derived.count(u);
                ready &= u != e.lhs && !later_defined;
            }
            if (!ready) continue;
            derived.insert(e.lhs);
            defining.push_back(&e);
            progress = true;
        }
    }
    std::vector<VarId> free;
    for (VarId v : all) {
        if (!derived.count(v)) free.push_back(v);
    }

    std::map<VarId, Term> sigma;
    std::vector<std::size_t> choice(free.size(), 0);
    for (;;) {
        for (std::size_t i = 0; i < free.size(); ++i) sigma.insert_or_assign(free[i], pool[choice[i]]);
        for (const Equation* e : defining) sigma.insert_or_assign(e->lhs, reference_normal_form(e->rhs_term().is_var() ? sigma.at(e->a) : Term::apply(e->kind == RhsKind::Sum ? Op::Plus : Op::Times, sigma.at(e->a), sigma.at(e->b))));
        bool ok = true;
        for (const auto& e : s.equations) {
            const Term var_side = sigma.at(e.lhs);
            const Term term_side = e.kind == RhsKind::Var
                                       ? sigma.at(e.a)
                                       : Term::apply(e.kind == RhsKind::Sum ? Op::Plus : Op::Times, sigma.at(e.a), sigma.at(e.b));
            ok = reference_normal_form(term_side) == var_side &&
                 (e.orient != Orientation::Down || reference_irreducible(term_side));
            if (!ok) break;
        }
        if (ok) return sigma;
        std::size_t i = 0;
        while (i < free.size() && ++choice[i] == pool.size()) choice[i++] = 0;
        if (i == free.size()) return std::nullopt;
    }
}

// Two or three equations over four or five variables with each side
// oriented at random; small enough for brute_force.
inline StandardSystem random_asym(std::mt19937_64& rng) {
    RandomSpec spec;
    spec.seed = rng();
    spec.variables = 4 + static_cast<unsigned>(rng() % 2);
    spec.equations = 2 + static_cast<unsigned>(rng() % 2);
    spec.labels = 1;
    spec.lhs_pool = 2;
    spec.acyclic = rng() % 2 == 0;
    StandardSystem s = generate_random(spec);
    for (auto& e : s.equations) e.orient = rng() % 2 ? Orientation::Down : Orientation::Up;
    return s;
}

}  // namespace osd::testing
