#pragma once

#include <optional>

#include "osd/term.hpp"

namespace osd::testing {

/// Reference normalizer: rewrites the leftmost-outermost redex until none is
/// left, sharing nothing with the library's normalizer.
inline std::optional<Term> rewrite_once(const Term& t) {
    if (t.is_var()) return std::nullopt;
    if (t.is_times() && t.right().is_plus()) {
        const Term& x = t.left();
        return Term::plus(Term::times(x, t.right().left()), Term::times(x, t.right().right()));
    }
    if (auto l = rewrite_once(t.left())) return Term::apply(t.op(), *l, t.right());
    if (auto r = rewrite_once(t.right())) return Term::apply(t.op(), t.left(), *r);
    return std::nullopt;
}

inline Term reference_normal_form(Term t) {
    while (auto next = rewrite_once(t)) t = *next;
    return t;
}

inline bool reference_irreducible(const Term& t) { return !rewrite_once(t).has_value(); }

}  // namespace osd::testing
