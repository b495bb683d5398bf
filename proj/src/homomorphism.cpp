#include "osd/homomorphism.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <unordered_map>

#include "osd/digraph.hpp"
#include "osd/invariants.hpp"
#include "osd/union_find.hpp"

namespace osd {

std::optional<TypedSystem> typecheck(const StandardSystem& s, std::string* why) {
    auto reject = [why](std::string reason) -> std::optional<TypedSystem> {
        if (why != nullptr) *why = std::move(reason);
        return std::nullopt;
    };
    if (s.is_asymmetric()) return reject("asymmetric equations");
    const auto labels = s.label_variables();
    if (labels.size() != 1) return reject(std::to_string(labels.size()) + " left product factors, need exactly one");
    const VarId t = labels.front();
    for (const auto& e : s.equations) {
        const bool clash = e.lhs == t || (e.kind == RhsKind::Var && e.a == t) ||
                           (e.kind == RhsKind::Sum && (e.a == t || e.b == t)) ||
                           (e.kind == RhsKind::Product && e.b == t);
        if (clash) return reject(s.vars.name(t) + " used as an ordinary variable in " + to_string(e, s.vars));
    }
    return TypedSystem{s, t};
}

SlpId power(SlpStore& store, VarId symbol, const BigNat& count) {
    if (count < 1) throw std::out_of_range("power of a symbol needs a positive count");
    SlpId acc = store.atom(symbol);
    const std::size_t bits = msb(count);
    for (std::size_t i = bits; i-- > 0;) {
        acc = store.concat(acc, acc);
        if (bit_test(count, static_cast<unsigned>(i))) acc = store.concat(acc, store.atom(symbol));
    }
    return acc;
}

namespace {

struct BudgetExhausted {};

class HomRun {
public:
    HomRun(const TypedSystem& t, const DecideOptions& opts) : input_(t), opts_(opts), vars_(t.system.vars) { grow(); }

    DecisionResult run() {
        DecisionResult result;
        stats_.fragment = "single-homomorphism";
        stats_.initial_labels = stats_.final_labels = 1;
        try {
            build();
            loop(result);
        } catch (const BudgetExhausted&) {
            result.verdict = Verdict::BudgetExceeded;
        }
        result.stats = std::move(stats_);
        result.trace = std::move(trace_);
        return result;
    }

private:
    struct Edge {
        BigNat length;
        VarId target;
    };
    struct Node {
        std::vector<Edge> out;
        std::vector<std::pair<VarId, VarId>> sums;
    };

    void grow() {
        uf_.grow(vars_.size());
        nodes_.resize(vars_.size());
    }

    VarId find(VarId v) { return VarId{uf_.find(v.value)}; }
    bool live(std::uint32_t v) const { return uf_.is_root(v) && VarId{v} != input_.t; }

    void step(const char* rule, const std::string& what = {}) {
        stats_.count(rule);
        if (++steps_ > opts_.budget) throw BudgetExhausted{};
        if (opts_.trace) trace_.push_back(std::string(rule) + (what.empty() ? "" : " " + what));
    }

    void merge(VarId x, VarId y) {
        x = find(x);
        y = find(y);
        if (x == y) return;
        const VarId keep = std::min(x, y);
        const VarId drop = std::max(x, y);
        step("0", vars_.name(drop) + " := " + vars_.name(keep));
        uf_.attach(drop.value, keep.value);
        Node moved = std::exchange(nodes_[drop.value], Node{});
        Node& target = nodes_[keep.value];
        target.out.insert(target.out.end(), moved.out.begin(), moved.out.end());
        target.sums.insert(target.sums.end(), moved.sums.begin(), moved.sums.end());
    }

    void drain() {
        while (!pending_.empty()) {
            auto [x, y] = pending_.front();
            pending_.pop_front();
            merge(x, y);
        }
    }

    void build() {
        for (const auto& e : input_.system.equations) {
            if (e.kind == RhsKind::Var) pending_.emplace_back(e.lhs, e.a);
        }
        drain();
        for (const auto& e : input_.system.equations) {
            if (e.kind == RhsKind::Sum) nodes_[find(e.lhs).value].sums.emplace_back(find(e.a), find(e.b));
            if (e.kind == RhsKind::Product) nodes_[find(e.lhs).value].out.push_back({BigNat(1), find(e.b)});
        }
    }

    // Rules (0), (i), (ii), (iii) to exhaustion.
    void cancel() {
        for (bool changed = true; changed;) {
            drain();
            changed = false;
            std::unordered_map<std::uint32_t, std::vector<std::pair<std::uint32_t, std::size_t>>> by_target;
            for (std::uint32_t v = 0; v < nodes_.size(); ++v) {
                if (!live(v)) continue;
                Node& node = nodes_[v];
                for (auto& [a, b] : node.sums) {
                    a = find(a);
                    b = find(b);
                }
                while (node.sums.size() > 1) {
                    const auto extra = node.sums.back();
                    node.sums.pop_back();
                    step("i", vars_.name(VarId{v}));
                    pending_.emplace_back(node.sums.front().first, extra.first);
                    pending_.emplace_back(node.sums.front().second, extra.second);
                    changed = true;
                }
                for (auto& e : node.out) e.target = find(e.target);
                for (std::size_t i = 0; i < node.out.size(); ++i) {
                    for (std::size_t j = node.out.size(); j-- > i + 1;) {
                        if (node.out[i].length != node.out[j].length) continue;
                        step("iii", vars_.name(VarId{v}));
                        pending_.emplace_back(node.out[i].target, node.out[j].target);
                        node.out.erase(node.out.begin() + static_cast<std::ptrdiff_t>(j));
                        changed = true;
                    }
                }
                for (std::size_t i = 0; i < node.out.size(); ++i) {
                    by_target[node.out[i].target.value].emplace_back(v, i);
                }
            }
            if (changed) continue;
            for (const auto& [target, incoming] : by_target) {
                for (std::size_t i = 0; i < incoming.size() && !changed; ++i) {
                    for (std::size_t j = i + 1; j < incoming.size() && !changed; ++j) {
                        const auto [x, xi] = incoming[i];
                        const auto [z, zi] = incoming[j];
                        if (x == z || nodes_[x].out[xi].length != nodes_[z].out[zi].length) continue;
                        step("ii", vars_.name(VarId{x}) + " " + vars_.name(VarId{z}));
                        nodes_[z].out.erase(nodes_[z].out.begin() + static_cast<std::ptrdiff_t>(zi));
                        pending_.emplace_back(VarId{x}, VarId{z});
                        changed = true;
                    }
                }
                if (changed) break;
            }
        }
    }

    Digraph dependency_graph() {
        Digraph g(nodes_.size());
        for (std::uint32_t v = 0; v < nodes_.size(); ++v) {
            if (!live(v)) continue;
            for (const auto& e : nodes_[v].out) g.add_edge(v, find(e.target).value);
            for (const auto& [a, b] : nodes_[v].sums) {
                g.add_edge(v, find(a).value);
                g.add_edge(v, find(b).value);
            }
        }
        return g;
    }

    // Rule (iv) over every branching node: X →h^j Y, X →h^i Z, j < i ⇒ Y →h^(i−j) Z.
    // Returns false when nothing applied. Stops when the graph became cyclic,
    // leaving the failure to the cycle check.
    bool prefix_round() {
        if (dependency_graph().has_cycle()) return false;
        bool applied = false;
        for (std::uint32_t v = 0; v < nodes_.size(); ++v) {
            if (!live(v) || nodes_[v].out.size() < 2) continue;
            auto& out = nodes_[v].out;
            std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) { return a.length < b.length; });
            if (out[0].length == out[1].length) continue;  // left to rule (iii)
            const Edge shorter = out[0];
            const Edge longer = out[1];
            out.erase(out.begin());
            step("iv", vars_.name(VarId{v}));
            nodes_[find(shorter.target).value].out.push_back({longer.length - shorter.length, find(longer.target)});
            applied = true;
        }
        return applied;
    }

    struct Classes {
        std::vector<std::uint32_t> class_of;
        std::vector<std::vector<VarId>> members;
        Digraph graph{0};
    };

    Classes classify() {
        UnionFind lateral(nodes_.size());
        for (std::uint32_t v = 0; v < nodes_.size(); ++v) {
            if (!live(v)) continue;
            for (const auto& e : nodes_[v].out) {
                const auto a = lateral.find(v);
                const auto b = lateral.find(find(e.target).value);
                if (a != b) lateral.attach(std::max(a, b), std::min(a, b));
            }
        }
        Classes cls;
        cls.class_of.assign(nodes_.size(), UINT32_MAX);
        std::vector<std::uint32_t> index(nodes_.size(), UINT32_MAX);
        for (std::uint32_t v = 0; v < nodes_.size(); ++v) {
            if (!live(v)) continue;
            const auto root = lateral.find(v);
            if (index[root] == UINT32_MAX) {
                index[root] = static_cast<std::uint32_t>(cls.members.size());
                cls.members.emplace_back();
            }
            cls.class_of[v] = index[root];
            cls.members[index[root]].push_back(VarId{v});
        }
        cls.graph = Digraph(cls.members.size());
        for (std::uint32_t v = 0; v < nodes_.size(); ++v) {
            if (!live(v)) continue;
            for (const auto& [a, b] : nodes_[v].sums) {
                cls.graph.add_edge(cls.class_of[v], cls.class_of[find(a).value]);
                cls.graph.add_edge(cls.class_of[v], cls.class_of[find(b).value]);
            }
        }
        return cls;
    }

    bool needs_processing(VarId v) const {
        const Node& node = nodes_[v.value];
        return node.out.size() > 1 || (node.out.size() == 1 && !node.sums.empty());
    }

    void fail(DecisionResult& result, FailureReason reason, std::string detail) {
        result.verdict = Verdict::NotUnifiable;
        result.reason = reason;
        result.detail = std::move(detail);
    }

    void loop(DecisionResult& result) {
        std::optional<std::size_t> previous_classes;
        for (;;) {
            do {
                cancel();
            } while (prefix_round());

            if (auto cycle = dependency_graph().find_cycle()) {
                std::string detail;
                for (auto v : *cycle) detail += (detail.empty() ? "" : " -> ") + vars_.name(VarId{v});
                return fail(result, FailureReason::DependencyCycle, detail);
            }
            const Classes cls = classify();
            if (auto cycle = cls.graph.find_cycle()) {
                std::string detail;
                for (auto c : *cycle) detail += (detail.empty() ? "[" : " -> [") + vars_.name(cls.members[c].front()) + "]";
                return fail(result, FailureReason::PropagationCycle, detail);
            }
            stats_.class_count = cls.members.size();
            if (previous_classes) OSD_INVARIANT(cls.members.size() <= *previous_classes, "class count never increases");
            previous_classes = cls.members.size();

            std::vector<char> needy(cls.members.size(), 0);
            bool any = false;
            for (std::size_t c = 0; c < cls.members.size(); ++c) {
                needy[c] = std::any_of(cls.members[c].begin(), cls.members[c].end(),
                                       [this](VarId v) { return needs_processing(v); });
                any = any || needy[c];
            }
            if (!any) {
                result.verdict = Verdict::Unifiable;
                result.solved = solved_form();
                return;
            }
            std::vector<char> blocked(cls.members.size(), 0);
            const auto order = cls.graph.topological_order();
            for (auto c : *order) {
                for (auto d : cls.graph.out(c)) {
                    if (needy[c] || blocked[c]) blocked[d] = 1;
                }
            }
            std::optional<std::size_t> pick;
            for (std::size_t c = 0; c < cls.members.size(); ++c) {
                if (needy[c] && !blocked[c] && (!pick || cls.members[c].front() < cls.members[*pick].front())) pick = c;
            }
            OSD_INVARIANT(pick.has_value(), "an unsolved acyclic graph has a selectable class");
            process(cls.members[*pick]);
        }
    }

    // Rule (v) from the sink backward, then rule (vii).
    void process(const std::vector<VarId>& members) {
        std::unordered_map<std::uint32_t, std::uint32_t> local;
        for (std::uint32_t i = 0; i < members.size(); ++i) local.emplace(members[i].value, i);
        Digraph g(members.size());
        std::vector<VarId> sinks;
        for (std::uint32_t i = 0; i < members.size(); ++i) {
            const auto& out = nodes_[members[i].value].out;
            OSD_INVARIANT(out.size() <= 1, "step 2 leaves at most one lateral edge per node");
            if (out.empty()) sinks.push_back(members[i]);
            for (const auto& e : out) g.add_edge(i, local.at(find(e.target).value));
        }
        OSD_INVARIANT(sinks.size() == 1, "a class has exactly one sink");
        const VarId sink = sinks.front();
        const auto order = g.topological_order();
        for (auto it = order->rbegin(); it != order->rend(); ++it) {
            const VarId x = members[*it];
            if (x == sink) continue;
            Edge& e = nodes_[x.value].out.front();
            const VarId y = find(e.target);
            if (y == sink) continue;
            const Edge& next = nodes_[y.value].out.front();
            step("v", vars_.name(x));
            e = {e.length + next.length, sink};
        }

        std::size_t fresh_here = 0;
        for (VarId u : members) {
            if (u == sink || nodes_[u.value].sums.empty()) continue;
            const Edge e = nodes_[u.value].out.front();
            const auto [u1, u2] = nodes_[u.value].sums.front();
            if (nodes_[sink.value].sums.empty()) {
                const VarId w1 = vars_.fresh();
                const VarId w2 = vars_.fresh();
                grow();
                nodes_[sink.value].sums.emplace_back(w1, w2);
                fresh_here += 2;
            }
            const auto [w1, w2] = nodes_[sink.value].sums.front();
            step("vii", vars_.name(u));
            nodes_[find(u1).value].out.push_back({e.length, find(w1)});
            nodes_[find(u2).value].out.push_back({e.length, find(w2)});
            nodes_[u.value].sums.clear();
        }
        stats_.fresh_variables += fresh_here;
        OSD_INVARIANT(fresh_here <= 2, "at most two fresh variables per processed class");
        for (VarId v : members) {
            OSD_INVARIANT(v == sink ? nodes_[v.value].out.empty() : nodes_[v.value].out.size() == 1,
                          "non-sink nodes keep exactly one lateral edge");
        }
    }

    SolvedForm solved_form() {
        auto store = std::make_shared<SlpStore>();
        SolvedForm f;
        f.vars = vars_;
        for (std::uint32_t v = 0; v < nodes_.size(); ++v) {
            const VarId id{v};
            if (id == input_.t) continue;
            if (!uf_.is_root(v)) {
                f.bindings.push_back({id, Term::var(find(id)), {}, {}});
                continue;
            }
            const Node& node = nodes_[v];
            if (!node.out.empty()) {
                const Edge& e = node.out.front();
                const SlpId label = power(*store, input_.t, e.length);
                f.bindings.push_back({id, std::nullopt, label, find(e.target)});
                if (e.length > stats_.max_label_length) {
                    stats_.max_label_length = e.length;
                    stats_.max_label_slp_size = store->size(label);
                }
                stats_.max_slp_size = std::max(stats_.max_slp_size, store->size(label));
                stats_.max_slp_depth = std::max(stats_.max_slp_depth, store->depth(label));
            } else if (!node.sums.empty()) {
                const auto [a, b] = node.sums.front();
                f.bindings.push_back({id, Term::plus(Term::var(find(a)), Term::var(find(b))), {}, {}});
            }
        }
        f.slps = std::move(store);
        return f;
    }

    const TypedSystem& input_;
    DecideOptions opts_;
    VarTable vars_;
    UnionFind uf_;
    std::vector<Node> nodes_;
    std::deque<std::pair<VarId, VarId>> pending_;
    RunStats stats_;
    std::vector<std::string> trace_;
    std::uint64_t steps_ = 0;
};

}  // namespace

DecisionResult decide_hom(const TypedSystem& t, const DecideOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    DecisionResult result = HomRun(t, opts).run();
    result.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace osd
