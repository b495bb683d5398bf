#include "osd/term.hpp"

#include <limits>
#include <sstream>
#include <unordered_map>
#include <unordered_set>
#include <utility>

namespace osd {

namespace {

std::uint64_t saturating_size(std::uint64_t a, std::uint64_t b) {
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    if (a >= kMax - 1 || b >= kMax - 1 - a) return kMax;
    return a + b + 1;
}

std::size_t mix(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

struct PairHash {
    std::size_t operator()(const std::pair<const void*, const void*>& p) const noexcept {
        return mix(std::hash<const void*>{}(p.first), std::hash<const void*>{}(p.second));
    }
};

}  // namespace

Term Term::var(VarId v) {
    auto n = std::make_shared<Node>();
    n->is_var = true;
    n->var = v;
    n->hash = mix(0x5bd1e995, v.value);
    return Term(std::move(n));
}

Term Term::apply(Op op, Term l, Term r) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->size = saturating_size(l.tree_size(), r.tree_size());
    n->hash = mix(mix(op == Op::Plus ? 0x27d4eb2d : 0x165667b1, l.hash()), r.hash());
    n->left = std::move(l);
    n->right = std::move(r);
    return Term(std::move(n));
}

Term Term::plus(Term l, Term r) { return apply(Op::Plus, std::move(l), std::move(r)); }
Term Term::times(Term l, Term r) { return apply(Op::Times, std::move(l), std::move(r)); }

namespace {

bool equal_rec(const Term& a, const Term& b,
               std::unordered_set<std::pair<const void*, const void*>, PairHash>& known) {
    if (a.identity() == b.identity()) return true;
    if (a.hash() != b.hash() || a.tree_size() != b.tree_size() || a.is_var() != b.is_var()) return false;
    if (a.is_var()) return a.var_id() == b.var_id();
    if (a.op() != b.op()) return false;
    const std::pair key{a.identity(), b.identity()};
    if (known.count(key) != 0) return true;
    if (!equal_rec(a.left(), b.left(), known) || !equal_rec(a.right(), b.right(), known)) return false;
    known.insert(key);
    return true;
}

class Normalizer {
public:
    explicit Normalizer(std::uint64_t cap) : cap_(cap) {}

    Term norm(const Term& t) {
        if (t.is_var()) return t;
        if (auto it = memo_.find(t.identity()); it != memo_.end()) return it->second;
        Term l = norm(t.left());
        Term r = norm(t.right());
        const bool unchanged = l.identity() == t.left().identity() && r.identity() == t.right().identity();
        Term out = t;
        if (t.is_plus()) {
            if (!unchanged) out = checked(Term::plus(l, r));
        } else if (!unchanged || r.is_plus()) {
            out = distribute(l, r);
        }
        memo_.emplace(t.identity(), out);
        keep_.push_back(t);
        return out;
    }

private:
    // Both arguments are normal; the result is the normal form of a×b.
    Term distribute(const Term& a, const Term& b) {
        if (!b.is_plus()) return checked(Term::times(a, b));
        const std::pair key{a.identity(), b.identity()};
        if (auto it = dist_memo_.find(key); it != dist_memo_.end()) return it->second;
        Term out = checked(Term::plus(distribute(a, b.left()), distribute(a, b.right())));
        dist_memo_.emplace(key, out);
        keep_.push_back(a);
        keep_.push_back(b);
        return out;
    }

    Term checked(Term t) const {
        if (t.tree_size() > cap_) throw MaterializationError("normal form exceeds the materialization cap");
        return t;
    }

    std::uint64_t cap_;
    std::unordered_map<const void*, Term> memo_;
    std::unordered_map<std::pair<const void*, const void*>, Term, PairHash> dist_memo_;
    std::vector<Term> keep_;  // pins memo keys so their addresses stay unique
};

}  // namespace

bool operator==(const Term& a, const Term& b) {
    std::unordered_set<std::pair<const void*, const void*>, PairHash> known;
    return equal_rec(a, b, known);
}

Term normalize(const Term& t, std::uint64_t cap) {
    if (t.tree_size() > cap) throw MaterializationError("term exceeds the materialization cap");
    Normalizer n(cap);
    return n.norm(t);
}

bool is_normal(const Term& t) {
    std::unordered_set<const void*> seen;
    std::vector<Term> stack{t};
    while (!stack.empty()) {
        Term cur = stack.back();
        stack.pop_back();
        if (cur.is_var() || !seen.insert(cur.identity()).second) continue;
        if (cur.is_times() && cur.right().is_plus()) return false;
        stack.push_back(cur.left());
        stack.push_back(cur.right());
    }
    return true;
}

bool e_equal(const Term& a, const Term& b, std::uint64_t cap) {
    return normalize(a, cap) == normalize(b, cap);
}

namespace {

void render(const Term& t, const VarTable& vars, std::ostream& out) {
    if (t.is_var()) {
        out << vars.name(t.var_id());
        return;
    }
    out << '(';
    render(t.left(), vars, out);
    out << (t.is_plus() ? " + " : " * ");
    render(t.right(), vars, out);
    out << ')';
}

}  // namespace

std::string to_string(const Term& t, const VarTable& vars) {
    std::ostringstream out;
    render(t, vars, out);
    return out.str();
}

}  // namespace osd
