#include <gtest/gtest.h>

#include <random>
#include <set>

#include "osd/system.hpp"
#include "osd/term.hpp"
#include "support.hpp"

namespace osd {
namespace {

struct Vars {
    VarTable table;
    VarId a = table.intern("a");
    VarId b = table.intern("b");
    VarId c = table.intern("c");
    Term A = Term::var(a);
    Term B = Term::var(b);
    Term C = Term::var(c);
};

Term random_term(std::mt19937_64& rng, const Vars& v, int depth) {
    std::uniform_int_distribution<int> pick(0, 5);
    const int k = depth == 0 ? pick(rng) % 3 : pick(rng);
    switch (k) {
        case 0: return v.A;
        case 1: return v.B;
        case 2: return v.C;
        case 3:
        case 4: return Term::times(random_term(rng, v, depth - 1), random_term(rng, v, depth - 1));
        default: return Term::plus(random_term(rng, v, depth - 1), random_term(rng, v, depth - 1));
    }
}

Term rewrite_to_normal(const Term& t) { return testing::reference_normal_form(t); }

TEST(Normalize, DistributesFromTheLeftOnly) {
    Vars v;
    const Term lhs = Term::times(v.A, Term::plus(v.B, v.C));
    EXPECT_EQ(normalize(lhs), Term::plus(Term::times(v.A, v.B), Term::times(v.A, v.C)));
    const Term right_dist = Term::times(Term::plus(v.A, v.B), v.C);
    EXPECT_EQ(normalize(right_dist), right_dist);
    EXPECT_TRUE(is_normal(right_dist));
    EXPECT_FALSE(is_normal(lhs));
}

TEST(Normalize, NestedSumsDistributeInnermost) {
    Vars v;
    // a × (b × (a + c)) → a × (b × a) + a × (b × c)
    const Term t = Term::times(v.A, Term::times(v.B, Term::plus(v.A, v.C)));
    const Term expected = Term::plus(Term::times(v.A, Term::times(v.B, v.A)), Term::times(v.A, Term::times(v.B, v.C)));
    EXPECT_EQ(normalize(t), expected);
}

TEST(Normalize, AgreesWithReferenceRewriter) {
    Vars v;
    std::mt19937_64 rng(7);
    for (int i = 0; i < 3000; ++i) {
        const Term t = random_term(rng, v, 5);
        const Term n = normalize(t);
        ASSERT_EQ(n, rewrite_to_normal(t)) << to_string(t, v.table);
        ASSERT_TRUE(is_normal(n));
        ASSERT_EQ(normalize(n), n);
    }
}

TEST(Normalize, CapIsEnforced) {
    Vars v;
    Term t = Term::plus(v.A, v.B);
    for (int i = 0; i < 30; ++i) t = Term::times(v.C, Term::plus(t, t));
    EXPECT_THROW(normalize(t, 1000), MaterializationError);
}

TEST(EEqual, IsTheEquationalTheory) {
    Vars v;
    EXPECT_TRUE(e_equal(Term::times(v.A, Term::plus(v.B, v.C)), Term::plus(Term::times(v.A, v.B), Term::times(v.A, v.C))));
    EXPECT_FALSE(e_equal(Term::times(Term::plus(v.A, v.B), v.C), Term::plus(Term::times(v.A, v.C), Term::times(v.B, v.C))));
    EXPECT_FALSE(e_equal(Term::plus(v.A, v.B), Term::plus(v.B, v.A)));  // + is not commutative
}

TEST(EEqual, SymmetricAndReflexiveOnRandomTerms) {
    Vars v;
    std::mt19937_64 rng(11);
    for (int i = 0; i < 500; ++i) {
        const Term s = random_term(rng, v, 4);
        const Term t = random_term(rng, v, 4);
        ASSERT_TRUE(e_equal(s, rewrite_to_normal(s)));
        ASSERT_EQ(e_equal(s, t), e_equal(t, s));
        ASSERT_EQ(e_equal(s, t), rewrite_to_normal(s) == rewrite_to_normal(t));
    }
}

TEST(TermPrinting, IsFullyParenthesized) {
    Vars v;
    EXPECT_EQ(to_string(Term::times(v.A, Term::plus(v.B, v.C)), v.table), "(a * (b + c))");
    EXPECT_EQ(to_string(v.A, v.table), "a");
}

TEST(TreeSize, CountsNodes) {
    Vars v;
    EXPECT_EQ(Term::times(v.A, Term::plus(v.B, v.C)).tree_size(), 5u);
}

// Fresh names mapped back to the subterm they abbreviate.
Term expand(const Term& t, const std::map<VarId, Term>& defs) {
    if (t.is_var()) {
        auto it = defs.find(t.var_id());
        return it == defs.end() ? t : expand(it->second, defs);
    }
    return Term::apply(t.op(), expand(t.left(), defs), expand(t.right(), defs));
}

std::pair<std::string, std::string> unordered(std::string a, std::string b) {
    return a < b ? std::pair{a, b} : std::pair{b, a};
}

TEST(Decompose, RoundTripsToTheOriginalEquations) {
    Vars v;
    std::mt19937_64 rng(3);
    const VarId x = v.table.intern("x");
    for (int round = 0; round < 200; ++round) {
        std::vector<TermEquation> problem;
        std::set<std::pair<std::string, std::string>> original;
        for (int k = 0; k < 3; ++k) {
            TermEquation e{rng() % 2 ? Term::var(x) : random_term(rng, v, 3), random_term(rng, v, 3)};
            if (e.lhs == e.rhs || (e.lhs.is_var() && e.rhs.is_var())) continue;
            problem.push_back(e);
            original.insert(unordered(to_string(e.lhs, v.table), to_string(e.rhs, v.table)));
        }
        const StandardSystem s = decompose(v.table, problem);
        ASSERT_NO_THROW(s.validate());
        std::map<VarId, Term> defs;
        for (const auto& e : s.equations) {
            if (s.vars.is_fresh(e.lhs)) defs.emplace(e.lhs, e.rhs_term());
        }
        std::set<std::pair<std::string, std::string>> recovered;
        for (const auto& e : s.equations) {
            const Term l = expand(e.lhs_term(), defs);
            const Term r = expand(e.rhs_term(), defs);
            if (l == r) continue;
            recovered.insert(unordered(to_string(l, s.vars), to_string(r, s.vars)));
        }
        ASSERT_EQ(recovered, original);
    }
}

TEST(StandardSystem, ValidateRejectsTrivialAndMixedEquations) {
    StandardSystem s;
    const VarId x = s.vars.intern("X");
    const VarId y = s.vars.intern("Y");
    s.add_sum(x, x, y);
    EXPECT_NO_THROW(s.validate());
    s.add_var(y, y);
    EXPECT_THROW(s.validate(), std::invalid_argument);

    StandardSystem mixed;
    const VarId u = mixed.vars.intern("U");
    const VarId w = mixed.vars.intern("W");
    mixed.add_sum(u, w, w, Orientation::Down);
    mixed.add_product(w, u, u);
    EXPECT_THROW(mixed.validate(), std::invalid_argument);
}

}  // namespace
}  // namespace osd
