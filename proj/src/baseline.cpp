#include "osd/baseline.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <optional>
#include <set>

#include "osd/invariants.hpp"
#include "osd/union_find.hpp"

namespace osd {

Digraph DepGraph::digraph() const {
    Digraph g(vertex_count);
    for (const auto& e : edges) g.add_edge(e.from.value, e.to.value);
    return g;
}

Digraph PropGraph::digraph() const {
    Digraph g(class_count);
    for (const auto& [a, b] : edges) g.add_edge(a, b);
    return g;
}

DepGraph build_dep_graph(const StandardSystem& s) {
    DepGraph d;
    d.vertex_count = s.vars.size();
    for (const auto& e : s.equations) {
        if (e.kind == RhsKind::Sum) {
            d.edges.push_back({e.lhs, e.a, DepLabel::LeftPlus});
            d.edges.push_back({e.lhs, e.b, DepLabel::RightPlus});
        } else if (e.kind == RhsKind::Product) {
            d.edges.push_back({e.lhs, e.a, DepLabel::LeftTimes});
            d.edges.push_back({e.lhs, e.b, DepLabel::RightTimes});
        }
    }
    return d;
}

PropGraph build_prop_graph(const DepGraph& d) {
    UnionFind uf(d.vertex_count);
    for (const auto& e : d.edges) {
        if (e.label != DepLabel::RightTimes) continue;
        const auto a = uf.find(e.from.value);
        const auto b = uf.find(e.to.value);
        if (a != b) uf.attach(std::max(a, b), std::min(a, b));
    }
    PropGraph p;
    p.class_of.assign(d.vertex_count, 0);
    std::vector<std::uint32_t> index(d.vertex_count, UINT32_MAX);
    for (std::uint32_t v = 0; v < d.vertex_count; ++v) {
        const auto root = uf.find(v);
        if (index[root] == UINT32_MAX) index[root] = static_cast<std::uint32_t>(p.class_count++);
        p.class_of[v] = index[root];
    }
    std::set<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (const auto& e : d.edges) {
        if (e.label == DepLabel::LeftPlus || e.label == DepLabel::RightPlus) {
            edges.emplace(p.class_of[e.from.value], p.class_of[e.to.value]);
        }
    }
    p.edges.assign(edges.begin(), edges.end());
    return p;
}

bool has_cycle(const DepGraph& d) { return d.digraph().has_cycle(); }
bool has_cycle(const PropGraph& p) { return p.digraph().has_cycle(); }

namespace {

struct BudgetExhausted {};

class BaselineRun {
public:
    BaselineRun(const StandardSystem& s, const DecideOptions& opts) : vars_(s.vars), opts_(opts) {
        grow();
        for (const auto& e : s.equations) {
            switch (e.kind) {
                case RhsKind::Var: pending_.emplace_back(e.lhs, e.a); break;
                case RhsKind::Sum: add_def(e.lhs, Op::Plus, e.a, e.b); break;
                case RhsKind::Product: add_def(e.lhs, Op::Times, e.a, e.b); break;
            }
        }
    }

    DecisionResult run() {
        DecisionResult result;
        try {
            exhaust_cancellation();
            for (;;) {
                if (check_cycles(result)) break;
                auto split = next_split();
                if (!split) {
                    result.verdict = Verdict::Unifiable;
                    result.solved = solved_form();
                    break;
                }
                apply_split(*split);
                exhaust_cancellation();
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
    struct Def {
        VarId a;
        VarId b;
    };

    void grow() {
        uf_.grow(vars_.size());
        sum_.resize(vars_.size());
        prod_.resize(vars_.size());
    }

    VarId find(VarId v) { return VarId{uf_.find(v.value)}; }

    void step(const std::string& rule, const std::string& what) {
        stats_.count(rule);
        if (++steps_ > opts_.budget) throw BudgetExhausted{};
        if (opts_.trace) trace_.push_back(rule + " " + what);
    }

    // Rules (b)/(c) fire as soon as a second definition of the same operator
    // lands on a variable.
    void add_def(VarId u, Op op, VarId a, VarId b) {
        u = find(u);
        auto& slot = (op == Op::Plus ? sum_ : prod_)[u.value];
        if (slot) {
            step(op == Op::Plus ? "c" : "b", vars_.name(u));
            pending_.emplace_back(slot->a, a);
            pending_.emplace_back(slot->b, b);
        } else {
            slot = Def{a, b};
        }
    }

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
            if (moved_sum) add_def(keep, Op::Plus, moved_sum->a, moved_sum->b);
            if (moved_prod) add_def(keep, Op::Times, moved_prod->a, moved_prod->b);
        }
    }

    DepGraph current_dep_graph() {
        DepGraph d;
        d.vertex_count = vars_.size();
        for (std::uint32_t v = 0; v < vars_.size(); ++v) {
            if (!uf_.is_root(v)) continue;
            const VarId id{v};
            if (sum_[v]) {
                d.edges.push_back({id, find(sum_[v]->a), DepLabel::LeftPlus});
                d.edges.push_back({id, find(sum_[v]->b), DepLabel::RightPlus});
            }
            if (prod_[v]) {
                d.edges.push_back({id, find(prod_[v]->a), DepLabel::LeftTimes});
                d.edges.push_back({id, find(prod_[v]->b), DepLabel::RightTimes});
            }
        }
        return d;
    }

    std::string describe_cycle(const std::vector<std::uint32_t>& cycle, const PropGraph* p) {
        std::string out;
        for (std::uint32_t c : cycle) {
            if (!out.empty()) out += " -> ";
            if (p == nullptr) {
                out += vars_.name(VarId{c});
            } else {
                for (std::uint32_t v = 0; v < p->class_of.size(); ++v) {
                    if (p->class_of[v] == c && uf_.is_root(v)) {
                        out += "[" + vars_.name(VarId{v}) + "]";
                        break;
                    }
                }
            }
        }
        return out;
    }

    bool check_cycles(DecisionResult& result) {
        const DepGraph d = current_dep_graph();
        if (auto cycle = d.digraph().find_cycle()) {
            result.verdict = Verdict::NotUnifiable;
            result.reason = FailureReason::DependencyCycle;
            result.detail = describe_cycle(*cycle, nullptr);
            return true;
        }
        const PropGraph p = build_prop_graph(d);
        if (auto cycle = p.digraph().find_cycle()) {
            result.verdict = Verdict::NotUnifiable;
            result.reason = FailureReason::PropagationCycle;
            result.detail = describe_cycle(*cycle, &p);
            return true;
        }
        return false;
    }

    std::optional<VarId> next_split() const {
        for (std::uint32_t v = 0; v < vars_.size(); ++v) {
            if (sum_[v] && prod_[v]) return VarId{v};
        }
        return std::nullopt;
    }

    // U = V×W, U = X+Y  ⇒  U = V×W, W = W1+W2, X = V×W1, Y = V×W2.
    void apply_split(VarId u) {
        OSD_INVARIANT(pending_.empty(), "splitting waits until replacement and cancellation are exhausted");
        const Def prod = *prod_[u.value];
        const Def sum = *std::exchange(sum_[u.value], std::nullopt);
        const VarId w1 = vars_.fresh();
        const VarId w2 = vars_.fresh();
        grow();
        stats_.fresh_variables += 2;
        step("d", vars_.name(u) + " -> " + vars_.name(w1) + " " + vars_.name(w2));
        add_def(prod.b, Op::Plus, w1, w2);
        add_def(sum.a, Op::Times, prod.a, w1);
        add_def(sum.b, Op::Times, prod.a, w2);
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

    VarTable vars_;
    DecideOptions opts_;
    UnionFind uf_;
    std::vector<std::optional<Def>> sum_;
    std::vector<std::optional<Def>> prod_;
    std::deque<std::pair<VarId, VarId>> pending_;
    RunStats stats_;
    std::vector<std::string> trace_;
    std::uint64_t steps_ = 0;
};

}  // namespace

DecisionResult ta_unify(const StandardSystem& s, const DecideOptions& opts) {
    if (s.is_asymmetric()) throw std::invalid_argument("the baseline decides symmetric systems only");
    const auto start = std::chrono::steady_clock::now();
    DecisionResult result = BaselineRun(s, opts).run();
    result.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace osd
