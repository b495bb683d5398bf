#include "osd/compressed.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <optional>
#include <set>
#include <unordered_map>

#include "osd/digraph.hpp"
#include "osd/invariants.hpp"
#include "osd/union_find.hpp"

namespace osd {

namespace {

struct BudgetExhausted {};

struct Failure {
    FailureReason reason;
    std::string detail;
};

class CompressedRun {
public:
    CompressedRun(const StandardSystem& s, const DecideOptions& opts)
        : input_(s), opts_(opts), vars_(s.vars), original_count_(s.vars.size()), slps_(std::make_shared<SlpStore>()) {
        grow();
    }

    DecisionResult run() {
        DecisionResult result;
        try {
            std::optional<std::size_t> previous_labels;
            for (bool first = true;; first = false) {
                build_phase(first);
                OSD_INVARIANT(label_count_ <= stats_.initial_labels, "label set never grows beyond V0");
                if (previous_labels) {
                    OSD_INVARIANT(label_count_ < *previous_labels, "label set shrinks at every restart");
                }
                previous_labels = label_count_;
                if (run_phase(result)) break;
                ++stats_.restarts;
                OSD_INVARIANT(stats_.restarts <= stats_.initial_labels, "restarts bounded by |V0|");
            }
        } catch (const BudgetExhausted&) {
            result.verdict = Verdict::BudgetExceeded;
        }
        stats_.final_labels = label_count_;
        result.stats = std::move(stats_);
        result.trace = std::move(trace_);
        return result;
    }

private:
    struct Edge {
        SlpId label;
        VarId target;
    };
    struct Node {
        std::vector<Edge> out;
        std::vector<std::pair<VarId, VarId>> sums;
    };
    struct Classes {
        std::vector<std::uint32_t> class_of;  // UINT32_MAX for dead vertices
        std::vector<std::vector<VarId>> members;  // ascending ids
        Digraph graph{0};
    };

    // ---- bookkeeping -------------------------------------------------------

    void grow() {
        uf_.grow(vars_.size());
        is_label_.resize(vars_.size(), 0);
        nodes_.resize(vars_.size());
        processed_.resize(vars_.size(), 0);
    }

    VarId find(VarId v) { return VarId{uf_.find(v.value)}; }

    bool live(std::uint32_t v) const {
        return uf_.is_root(v) && (v < original_count_ || v >= phase_fresh_start_);
    }

    void step(const char* rule, const std::string& what = {}) {
        stats_.count(rule);
        if (++steps_ > opts_.budget) throw BudgetExhausted{};
        if (opts_.trace) trace_.push_back(std::string(rule) + (what.empty() ? "" : " " + what));
    }

    void note_label(SlpId id) {
        stats_.max_slp_size = std::max(stats_.max_slp_size, slps_->size(id));
        stats_.max_slp_depth = std::max(stats_.max_slp_depth, slps_->depth(id));
    }

    bool labels_equal(SlpId a, SlpId b) const {
        if (a == b) return true;
        if (slps_->length(a) != slps_->length(b)) return false;
        const auto ta = slps_->terminals(a);
        const auto tb = slps_->terminals(b);
        if (!std::equal(ta.begin(), ta.end(), tb.begin(), tb.end())) return false;
        return slps_->equal(a, b);
    }

    std::string name(VarId v) const { return vars_.name(v); }

    // ---- rule (0) ----------------------------------------------------------

    // A label variable absorbs a non-label one; otherwise the older survives.
    void merge(VarId x, VarId y) {
        x = find(x);
        y = find(y);
        if (x == y) return;
        VarId keep = std::min(x, y);
        if (is_label_[x.value] != is_label_[y.value]) keep = is_label_[x.value] ? x : y;
        const VarId drop = keep == x ? y : x;
        if (is_label_[x.value] && is_label_[y.value]) {
            restart_ = true;
            --label_count_;
        }
        step("0", name(drop) + " := " + name(keep));
        uf_.attach(drop.value, keep.value);
        is_label_[drop.value] = 0;
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

    // ---- step 1 ------------------------------------------------------------

    void build_phase(bool first) {
        restart_ = false;
        pending_.clear();
        phase_fresh_start_ = vars_.size();
        fresh_in_phase_ = 0;
        phase_class_budget_.reset();
        std::fill(nodes_.begin(), nodes_.end(), Node{});
        std::fill(is_label_.begin(), is_label_.end(), 0);
        std::fill(processed_.begin(), processed_.end(), 0);

        label_count_ = 0;
        for (const auto& e : input_.equations) {
            if (e.kind != RhsKind::Product) continue;
            auto& flag = is_label_[find(e.a).value];
            if (!flag) ++label_count_;
            flag = 1;
        }
        if (first) stats_.initial_labels = label_count_;
        for (const auto& e : input_.equations) {
            if (e.kind == RhsKind::Var) merge(e.lhs, e.a);
        }
        restart_ = false;  // label merges from S itself are already reflected in this phase
        for (const auto& e : input_.equations) {
            if (e.kind == RhsKind::Sum) {
                nodes_[find(e.lhs).value].sums.emplace_back(find(e.a), find(e.b));
            } else if (e.kind == RhsKind::Product) {
                const SlpId label = slps_->atom(find(e.a));
                nodes_[find(e.lhs).value].out.push_back({label, find(e.b)});
                note_label(label);
            }
        }
    }

    // ---- step 2 ------------------------------------------------------------

    // Rules (0), (i), (ii), (iii) to exhaustion. Stops early on a restart.
    void cancel() {
        for (;;) {
            drain();
            if (restart_) return;
            bool changed = false;
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
                    step("i", name(VarId{v}));
                    pending_.emplace_back(node.sums.front().first, extra.first);
                    pending_.emplace_back(node.sums.front().second, extra.second);
                    changed = true;
                }
                for (auto& e : node.out) e.target = find(e.target);
                for (std::size_t i = 0; i < node.out.size(); ++i) {
                    for (std::size_t j = node.out.size(); j-- > i + 1;) {
                        if (!labels_equal(node.out[i].label, node.out[j].label)) continue;
                        step("iii", name(VarId{v}));
                        pending_.emplace_back(node.out[i].target, node.out[j].target);
                        node.out.erase(node.out.begin() + static_cast<std::ptrdiff_t>(j));
                        changed = true;
                    }
                }
            }
            if (changed) continue;
            if (!cancel_parallel_sources()) return;
        }
    }

    // Rule (ii): equal labels into one target force equal sources. Applies
    // at most one instance and reports whether it did.
    bool cancel_parallel_sources() {
        std::unordered_map<std::uint32_t, std::vector<std::pair<std::uint32_t, std::size_t>>> by_target;
        for (std::uint32_t v = 0; v < nodes_.size(); ++v) {
            if (!live(v)) continue;
            for (std::size_t i = 0; i < nodes_[v].out.size(); ++i) {
                by_target[nodes_[v].out[i].target.value].emplace_back(v, i);
            }
        }
        for (const auto& [target, incoming] : by_target) {
            for (std::size_t i = 0; i < incoming.size(); ++i) {
                for (std::size_t j = i + 1; j < incoming.size(); ++j) {
                    const auto [x, xi] = incoming[i];
                    const auto [z, zi] = incoming[j];
                    if (x == z || !labels_equal(nodes_[x].out[xi].label, nodes_[z].out[zi].label)) continue;
                    step("ii", name(VarId{x}) + " " + name(VarId{z}));
                    nodes_[z].out.erase(nodes_[z].out.begin() + static_cast<std::ptrdiff_t>(zi));
                    pending_.emplace_back(VarId{x}, VarId{z});
                    return true;
                }
            }
        }
        return false;
    }

    // ---- step 3 ------------------------------------------------------------

    Classes classify() {
        const std::size_t n = nodes_.size();
        UnionFind lateral(n);
        for (std::uint32_t v = 0; v < n; ++v) {
            if (!live(v)) continue;
            for (const auto& e : nodes_[v].out) {
                const auto a = lateral.find(v);
                const auto b = lateral.find(find(e.target).value);
                if (a != b) lateral.attach(std::max(a, b), std::min(a, b));
            }
        }
        Classes cls;
        cls.class_of.assign(n, UINT32_MAX);
        std::vector<std::uint32_t> index(n, UINT32_MAX);
        for (std::uint32_t v = 0; v < n; ++v) {
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
        for (std::uint32_t v = 0; v < n; ++v) {
            if (!live(v)) continue;
            for (const auto& [a, b] : nodes_[v].sums) {
                cls.graph.add_edge(cls.class_of[v], cls.class_of[find(a).value]);
                cls.graph.add_edge(cls.class_of[v], cls.class_of[find(b).value]);
            }
        }
        return cls;
    }

    std::optional<Failure> cycle_failure(const Classes& cls) {
        // Relation edges exist only for this check.
        Digraph ld(nodes_.size());
        std::set<std::uint32_t> relation;
        for (std::uint32_t v = 0; v < nodes_.size(); ++v) {
            if (!live(v)) continue;
            relation.clear();
            for (const auto& e : nodes_[v].out) {
                ld.add_edge(v, find(e.target).value);
                for (VarId t : slps_->terminals(e.label)) relation.insert(find(t).value);
            }
            for (auto t : relation) ld.add_edge(v, t);
            for (const auto& [a, b] : nodes_[v].sums) {
                ld.add_edge(v, find(a).value);
                ld.add_edge(v, find(b).value);
            }
        }
        if (auto cycle = ld.find_cycle()) {
            std::string detail;
            for (auto v : *cycle) detail += (detail.empty() ? "" : " -> ") + name(VarId{v});
            return Failure{FailureReason::DependencyCycle, detail};
        }
        if (auto cycle = cls.graph.find_cycle()) {
            std::string detail;
            for (auto c : *cycle) detail += (detail.empty() ? "[" : " -> [") + name(cls.members[c].front()) + "]";
            return Failure{FailureReason::PropagationCycle, detail};
        }
        return std::nullopt;
    }

    bool needs_processing(VarId v) const {
        const Node& node = nodes_[v.value];
        return node.out.size() > 1 || (node.out.size() == 1 && !node.sums.empty());
    }

    // ---- step 4 ------------------------------------------------------------

    // A class that is not yet locally solved and has no such class above it.
    std::optional<std::size_t> select(const Classes& cls) const {
        const std::size_t k = cls.members.size();
        std::vector<char> needy(k, 0);
        for (std::size_t c = 0; c < k; ++c) {
            needy[c] = std::any_of(cls.members[c].begin(), cls.members[c].end(),
                                   [this](VarId v) { return needs_processing(v); });
        }
        const auto order = cls.graph.topological_order();
        std::vector<char> blocked(k, 0);
        for (auto c : *order) {
            for (auto d : cls.graph.out(c)) {
                if (needy[c] || blocked[c]) blocked[d] = 1;
            }
        }
        std::optional<std::size_t> best;
        for (std::size_t c = 0; c < k; ++c) {
            if (!needy[c] || blocked[c]) continue;
            if (!best || cls.members[c].front() < cls.members[*best].front()) best = c;
        }
        return best;
    }

    // Lateral-edge topological order of the class, sources first.
    std::optional<std::vector<VarId>> local_order(const std::vector<VarId>& members) {
        std::unordered_map<std::uint32_t, std::uint32_t> local;
        for (std::uint32_t i = 0; i < members.size(); ++i) local.emplace(members[i].value, i);
        Digraph g(members.size());
        for (std::uint32_t i = 0; i < members.size(); ++i) {
            for (const auto& e : nodes_[members[i].value].out) {
                auto it = local.find(find(e.target).value);
                OSD_INVARIANT(it != local.end(), "lateral edges stay inside their class");
                g.add_edge(i, it->second);
            }
        }
        auto order = g.topological_order();
        if (!order) return std::nullopt;
        std::vector<VarId> out;
        out.reserve(order->size());
        for (auto i : *order) out.push_back(members[i]);
        return out;
    }

    std::vector<VarId> live_members(const std::vector<VarId>& members) {
        std::vector<VarId> out;
        for (VarId v : members) {
            if (find(v) == v) out.push_back(v);
        }
        return out;
    }

    Failure local_cycle(const std::vector<VarId>& members) {
        return Failure{FailureReason::DependencyCycle, "lateral cycle through [" + name(members.front()) + "]"};
    }

    // (v + vi)(iv)!(x)!(viii)(vii)!
    std::optional<Failure> process(std::vector<VarId> members) {
        if (std::any_of(members.begin(), members.end(), [this](VarId v) { return processed_[v.value] != 0; })) {
            ++stats_.class_reprocessing;
        }
        for (VarId v : members) processed_[v.value] = 1;
        const std::size_t class_size = members.size();

        // Resolve branching nodes, sources first.
        for (;;) {
            members = live_members(members);
            auto order = local_order(members);
            if (!order) return local_cycle(members);
            auto branching = std::find_if(order->begin(), order->end(),
                                          [this](VarId v) { return nodes_[v.value].out.size() > 1; });
            if (branching == order->end()) break;
            const VarId x = *branching;
            auto& out = nodes_[x.value].out;
            std::stable_sort(out.begin(), out.end(), [this](const Edge& a, const Edge& b) {
                return slps_->length(a.label) < slps_->length(b.label);
            });
            const Edge shorter = out[0];
            const Edge longer = out[1];
            if (labels_equal(shorter.label, longer.label)) {
                step("iii", name(x));
                out.erase(out.begin());
                pending_.emplace_back(shorter.target, longer.target);
                drain();
                if (restart_) return std::nullopt;
                continue;
            }
            if (auto mm = slps_->first_mismatch(shorter.label, longer.label)) {
                const bool same_length = slps_->length(shorter.label) == slps_->length(longer.label);
                step(same_length ? "v" : "vi", name(mm->first) + " = " + name(mm->second));
                pending_.emplace_back(mm->first, mm->second);
                drain();
                OSD_INVARIANT(restart_, "a label mismatch equates two label variables");
                return std::nullopt;
            }
            // shorter is a proper prefix of longer: X →η Y, X →π Z ⇒ Y →η⁻¹π Z.
            const SlpId rest = slps_->suffix(longer.label, slps_->length(longer.label) - slps_->length(shorter.label));
            note_label(rest);
            step("iv", name(x));
            out.erase(out.begin());
            nodes_[find(shorter.target).value].out.push_back({rest, find(longer.target)});
        }

        // Point every node straight at the sink, nearest nodes first.
        members = live_members(members);
        auto order = local_order(members);
        if (!order) return local_cycle(members);
        std::vector<VarId> sinks;
        for (VarId v : members) {
            if (nodes_[v.value].out.empty()) sinks.push_back(v);
        }
        OSD_INVARIANT(sinks.size() == 1, "a resolved class has exactly one sink");
        const VarId sink = sinks.front();
        for (auto it = order->rbegin(); it != order->rend(); ++it) {
            if (*it == sink) continue;
            Edge& e = nodes_[it->value].out.front();
            const VarId y = find(e.target);
            if (y == sink) continue;
            const Edge& next = nodes_[y.value].out.front();
            OSD_INVARIANT(find(next.target) == sink, "successor already points at the sink");
            const SlpId joined = slps_->concat(e.label, next.label);
            note_label(joined);
            step("x", name(*it));
            e = {joined, sink};
        }

        // Push sums below the sink.
        std::size_t fresh_here = 0;
        std::size_t edges_added = 0;
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
                step("viii", name(u) + " -> " + name(w1) + " " + name(w2));
            } else {
                step("vii", name(u));
            }
            const auto [w1, w2] = nodes_[sink.value].sums.front();
            nodes_[find(u1).value].out.push_back({e.label, find(w1)});
            nodes_[find(u2).value].out.push_back({e.label, find(w2)});
            nodes_[u.value].sums.clear();
            edges_added += 2;
        }
        stats_.fresh_variables += fresh_here;
        fresh_in_phase_ += fresh_here;

        OSD_INVARIANT(fresh_here <= 2, "at most two fresh variables per processed class");
        OSD_INVARIANT(edges_added <= 2 * class_size, "lateral edges pushed down bounded by twice the class size");
        for (VarId v : members) {
            const Node& node = nodes_[v.value];
            OSD_INVARIANT(v == sink ? node.out.empty() : node.out.size() == 1,
                          "non-sink nodes keep exactly one lateral edge");
            OSD_INVARIANT(v == sink || node.sums.empty(), "only the sink keeps a sum");
        }
        return std::nullopt;
    }

    bool solved() const {
        for (std::uint32_t v = 0; v < nodes_.size(); ++v) {
            if (live(v) && (needs_processing(VarId{v}) || nodes_[v].sums.size() > 1)) return false;
        }
        return true;
    }

    // Returns true when the run finished, false on a restart.
    bool run_phase(DecisionResult& result) {
        std::optional<std::size_t> previous_classes;
        for (;;) {
            cancel();
            if (restart_) return false;
            const Classes cls = classify();
            if (auto failure = cycle_failure(cls)) {
                result.verdict = Verdict::NotUnifiable;
                result.reason = failure->reason;
                result.detail = failure->detail;
                stats_.class_count = cls.members.size();
                return true;
            }
            const std::size_t class_count = cls.members.size();
            if (previous_classes) OSD_INVARIANT(class_count <= *previous_classes, "class count never increases");
            previous_classes = class_count;
            if (!phase_class_budget_) phase_class_budget_ = class_count;
            OSD_INVARIANT(fresh_in_phase_ <= 2 * *phase_class_budget_, "fresh variables bounded by twice the class count");
            stats_.class_count = class_count;
            if (solved()) {
                result.verdict = Verdict::Unifiable;
                result.solved = solved_form();
                return true;
            }
            const auto pick = select(cls);
            OSD_INVARIANT(pick.has_value(), "an unsolved acyclic graph has a selectable class");
            if (auto failure = process(cls.members[*pick])) {
                result.verdict = Verdict::NotUnifiable;
                result.reason = failure->reason;
                result.detail = failure->detail;
                return true;
            }
            if (restart_) return false;
        }
    }

    SolvedForm solved_form() {
        SolvedForm f;
        f.vars = vars_;
        f.slps = slps_;
        BigNat longest = 0;
        std::optional<SlpId> longest_label;
        for (std::uint32_t v = 0; v < nodes_.size(); ++v) {
            if (v >= original_count_ && v < phase_fresh_start_) continue;  // discarded at a restart
            const VarId id{v};
            if (!uf_.is_root(v)) {
                f.bindings.push_back({id, Term::var(find(id)), {}, {}});
                continue;
            }
            const Node& node = nodes_[v];
            if (!node.out.empty()) {
                const Edge& e = node.out.front();
                f.bindings.push_back({id, std::nullopt, e.label, find(e.target)});
                stats_.max_slp_depth = std::max(stats_.max_slp_depth, slps_->depth(e.label));
                if (!longest_label || slps_->length(e.label) > longest) {
                    longest = slps_->length(e.label);
                    longest_label = e.label;
                }
            } else if (!node.sums.empty()) {
                const auto [a, b] = node.sums.front();
                f.bindings.push_back({id, Term::plus(Term::var(find(a)), Term::var(find(b))), {}, {}});
            }
        }
        stats_.max_label_length = longest;
        stats_.max_label_slp_size = longest_label ? slps_->size(*longest_label) : 0;
        return f;
    }

    const StandardSystem& input_;
    DecideOptions opts_;
    VarTable vars_;
    std::size_t original_count_;
    std::shared_ptr<SlpStore> slps_;
    UnionFind uf_;
    std::vector<char> is_label_;
    std::vector<Node> nodes_;
    std::vector<char> processed_;
    std::deque<std::pair<VarId, VarId>> pending_;
    bool restart_ = false;
    std::size_t label_count_ = 0;
    std::size_t phase_fresh_start_ = 0;
    std::size_t fresh_in_phase_ = 0;
    std::optional<std::size_t> phase_class_budget_;
    RunStats stats_;
    std::vector<std::string> trace_;
    std::uint64_t steps_ = 0;
};

}  // namespace

DecisionResult decide(const StandardSystem& s, const DecideOptions& opts) {
    if (s.is_asymmetric()) throw std::invalid_argument("the compressed decider handles symmetric systems only");
    const auto start = std::chrono::steady_clock::now();
    DecisionResult result = CompressedRun(s, opts).run();
    result.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace osd
