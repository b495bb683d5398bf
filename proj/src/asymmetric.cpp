#include "osd/asymmetric.hpp"

#include <chrono>
#include <deque>
#include <optional>

#include "osd/baseline.hpp"
#include "osd/union_find.hpp"

namespace osd {

namespace {

struct BudgetExhausted {};

enum class RootKind : std::uint8_t { Var, Plus, Times };

class AsymRun {
public:
    AsymRun(const StandardSystem& s, const DecideOptions& opts) : input_(s), opts_(opts), vars_(s.vars) {
        grow();
        for (const auto& e : s.equations) {
            switch (e.kind) {
                case RhsKind::Var: pending_.emplace_back(e.lhs, e.a); break;
                case RhsKind::Sum: add_def(e.lhs, Op::Plus, {e.a, e.b, e.orient}); break;
                case RhsKind::Product: add_def(e.lhs, Op::Times, {e.a, e.b, e.orient}); break;
            }
        }
    }

    DecisionResult run() {
        DecisionResult result;
        try {
            for (;;) {
                exhaust_cancellation();
                if (hard_failure(result) || cycle_failure(result)) break;
                auto u = next_split();
                if (!u) {
                    if (!irreducibility_failure(result)) {
                        result.verdict = Verdict::Unifiable;
                        result.solved = solved_form();
                    }
                    break;
                }
                split(*u);
                ++stats_.sum_transformations;
            }
        } catch (const BudgetExhausted&) {
            result.verdict = Verdict::BudgetExceeded;
        }
        result.stats = std::move(stats_);
        result.trace = std::move(trace_);
        return result;
    }

private:
    // Down: `u =d a∘b`, the term side must stay irreducible.
    // Up: `a∘b =d u`, only the variable side is constrained.
    struct Def {
        VarId a;
        VarId b;
        Orientation orient;
    };

    void grow() {
        uf_.grow(vars_.size());
        sum_.resize(vars_.size());
        prod_.resize(vars_.size());
    }

    VarId find(VarId v) { return VarId{uf_.find(v.value)}; }

    void step(const char* rule, const std::string& what) {
        stats_.count(rule);
        if (++steps_ > opts_.budget) throw BudgetExhausted{};
        if (opts_.trace) trace_.push_back(std::string(rule) + " " + what);
    }

    static bool down(const Def& d) { return d.orient == Orientation::Down; }

    // Rules (b), (c), (d) when a second definition of the same operator arrives.
    void add_def(VarId u, Op op, Def d) {
        u = find(u);
        auto& slot = (op == Op::Plus ? sum_ : prod_)[u.value];
        if (!slot) {
            slot = d;
            return;
        }
        const char* rule = down(*slot) && down(d) ? "b" : (down(*slot) || down(d) ? "c" : "d");
        step(rule, vars_.name(u));
        pending_.emplace_back(slot->a, d.a);
        pending_.emplace_back(slot->b, d.b);
        if (down(d)) slot->orient = Orientation::Down;
    }

    // Rule (a).
    void exhaust_cancellation() {
        while (!pending_.empty()) {
            auto [x, y] = pending_.front();
            pending_.pop_front();
            x = find(x);
            y = find(y);
            if (x == y) continue;
            const VarId keep = std::min(x, y);
            const VarId drop = std::max(x, y);
            step("a", vars_.name(drop) + " := " + vars_.name(keep));
            uf_.attach(drop.value, keep.value);
            auto moved_sum = std::exchange(sum_[drop.value], std::nullopt);
            auto moved_prod = std::exchange(prod_[drop.value], std::nullopt);
            if (moved_sum) add_def(keep, Op::Plus, *moved_sum);
            if (moved_prod) add_def(keep, Op::Times, *moved_prod);
        }
    }

    bool fail(DecisionResult& result, FailureReason reason, std::string detail) {
        result.verdict = Verdict::NotUnifiable;
        result.reason = reason;
        result.detail = std::move(detail);
        return true;
    }

    // Rules (e), (f), (e′), (f′): a sum would have to surface through an
    // irreducible product.
    bool hard_failure(DecisionResult& result) {
        for (std::uint32_t v = 0; v < vars_.size(); ++v) {
            if (!uf_.is_root(v) || !prod_[v] || !down(*prod_[v])) continue;
            if (sum_[v]) {
                const bool e = down(*sum_[v]);
                step(e ? "e" : "f", vars_.name(VarId{v}));
                return fail(result, e ? FailureReason::RuleE : FailureReason::RuleF, vars_.name(VarId{v}));
            }
            const VarId w = find(prod_[v]->b);
            if (sum_[w.value]) {
                const bool e = down(*sum_[w.value]);
                step(e ? "e'" : "f'", vars_.name(VarId{v}));
                return fail(result, e ? FailureReason::RuleEPrime : FailureReason::RuleFPrime,
                            vars_.name(VarId{v}) + " over " + vars_.name(w));
            }
        }
        return false;
    }

    bool cycle_failure(DecisionResult& result) {
        DepGraph d;
        d.vertex_count = vars_.size();
        for (std::uint32_t v = 0; v < vars_.size(); ++v) {
            if (!uf_.is_root(v)) continue;
            if (sum_[v]) {
                d.edges.push_back({VarId{v}, find(sum_[v]->a), DepLabel::LeftPlus});
                d.edges.push_back({VarId{v}, find(sum_[v]->b), DepLabel::RightPlus});
            }
            if (prod_[v]) {
                d.edges.push_back({VarId{v}, find(prod_[v]->a), DepLabel::LeftTimes});
                d.edges.push_back({VarId{v}, find(prod_[v]->b), DepLabel::RightTimes});
            }
        }
        if (auto cycle = d.digraph().find_cycle()) {
            std::string detail;
            for (auto v : *cycle) detail += (detail.empty() ? "" : " -> ") + vars_.name(VarId{v});
            return fail(result, FailureReason::DependencyCycle, detail);
        }
        if (has_cycle(build_prop_graph(d))) return fail(result, FailureReason::PropagationCycle, "");
        return false;
    }

    std::optional<VarId> next_split() const {
        for (std::uint32_t v = 0; v < vars_.size(); ++v) {
            if (sum_[v] && prod_[v]) return VarId{v};
        }
        return std::nullopt;
    }

    // Rules (g), (h): V×W =d U with a sum on U.
    void split(VarId u) {
        const Def prod = *prod_[u.value];
        const Def sum = *std::exchange(sum_[u.value], std::nullopt);
        const VarId w1 = vars_.fresh();
        const VarId w2 = vars_.fresh();
        grow();
        stats_.fresh_variables += 2;
        step(down(sum) ? "g" : "h", vars_.name(u) + " -> " + vars_.name(w1) + " " + vars_.name(w2));
        add_def(prod.b, Op::Plus, {w1, w2, Orientation::Up});
        add_def(sum.a, Op::Times, {prod.a, w1, Orientation::Up});
        add_def(sum.b, Op::Times, {prod.a, w2, Orientation::Up});
    }

    RootKind kind(VarId v, std::vector<std::optional<RootKind>>& memo) {
        v = find(v);
        if (memo[v.value]) return *memo[v.value];
        RootKind k = RootKind::Var;
        if (sum_[v.value]) {
            k = RootKind::Plus;
        } else if (prod_[v.value]) {
            k = kind(prod_[v.value]->b, memo) == RootKind::Plus ? RootKind::Plus : RootKind::Times;
        }
        memo[v.value] = k;
        return k;
    }

    // The solved form yields the mgu; a constrained product whose right
    // factor normalizes to a sum is reducible in every instance of it.
    bool irreducibility_failure(DecisionResult& result) {
        std::vector<std::optional<RootKind>> memo(vars_.size());
        for (const auto& e : input_.equations) {
            if (e.kind != RhsKind::Product || e.orient != Orientation::Down) continue;
            if (kind(e.b, memo) == RootKind::Plus) {
                step("e'", to_string(e, vars_));
                return fail(result, FailureReason::RuleEPrime, "right factor of " + to_string(e, vars_) + " normalizes to a sum");
            }
        }
        return false;
    }

    SolvedForm solved_form() {
        SolvedForm f;
        f.vars = vars_;
        for (std::uint32_t v = 0; v < vars_.size(); ++v) {
            const VarId id{v};
            if (!uf_.is_root(v)) {
                f.bindings.push_back({id, Term::var(find(id)), {}, {}});
            } else if (prod_[v]) {
                f.bindings.push_back({id, Term::times(Term::var(find(prod_[v]->a)), Term::var(find(prod_[v]->b))), {}, {}});
            } else if (sum_[v]) {
                f.bindings.push_back({id, Term::plus(Term::var(find(sum_[v]->a)), Term::var(find(sum_[v]->b))), {}, {}});
            }
        }
        return f;
    }

    const StandardSystem& input_;
    DecideOptions opts_;
    VarTable vars_;
    UnionFind uf_;
    std::vector<std::optional<Def>> sum_;
    std::vector<std::optional<Def>> prod_;
    std::deque<std::pair<VarId, VarId>> pending_;
    RunStats stats_;
    std::vector<std::string> trace_;
    std::uint64_t steps_ = 0;
};

}  // namespace

DecisionResult asym_unify(const StandardSystem& s, const DecideOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    DecisionResult result = AsymRun(s, opts).run();
    result.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

Substitution asym_unifier(const DecisionResult& r, std::uint64_t cap) {
    if (!r.solved) throw std::invalid_argument("no solved form to extract a unifier from");
    return materialize(*r.solved, cap).normalized(cap);
}

bool check_asymmetry(const Substitution& sigma, const StandardSystem& s, std::uint64_t cap) {
    return verify_unifier(s, sigma, cap).ok();
}

Substitution normalize_substitution(const Substitution& sigma, std::uint64_t cap) { return sigma.normalized(cap); }

}  // namespace osd
