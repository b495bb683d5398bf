#include "osd/slp.hpp"

#include <algorithm>
#include <iterator>
#include <unordered_set>

namespace osd {

std::size_t SlpStore::MatchKeyHash::operator()(const MatchKey& k) const noexcept {
    const auto low = static_cast<std::uint64_t>(k.offset & BigNat(0xffffffffffffffffULL));
    std::size_t h = std::hash<std::uint64_t>{}((std::uint64_t{k.a} << 32) | k.b);
    return h ^ (std::hash<std::uint64_t>{}(low) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

SlpId SlpStore::atom(VarId terminal) {
    if (auto it = atoms_.find(terminal.value); it != atoms_.end()) return it->second;
    const SlpId id{static_cast<std::uint32_t>(prods_.size())};
    Production p;
    p.terminal = true;
    p.symbol = terminal;
    p.length = 1;
    p.terminals = {terminal};
    prods_.push_back(std::move(p));
    atoms_.emplace(terminal.value, id);
    return id;
}

SlpId SlpStore::concat(SlpId left, SlpId right) {
    const std::uint64_t key = (std::uint64_t{left.value} << 32) | right.value;
    if (auto it = pairs_.find(key); it != pairs_.end()) return it->second;
    const SlpId id{static_cast<std::uint32_t>(prods_.size())};
    const Production& l = prods_[left.value];
    const Production& r = prods_[right.value];
    Production p;
    p.left = left;
    p.right = right;
    p.length = l.length + r.length;
    p.depth = 1 + std::max(l.depth, r.depth);
    std::set_union(l.terminals.begin(), l.terminals.end(), r.terminals.begin(), r.terminals.end(),
                   std::back_inserter(p.terminals));
    prods_.push_back(std::move(p));
    pairs_.emplace(key, id);
    return id;
}

SlpId SlpStore::suffix(SlpId id, const BigNat& keep) {
    if (keep < 1 || keep > length(id)) throw std::out_of_range("suffix length out of range");
    SlpId t = id;
    while (!is_terminal(t) && length(right(t)) >= keep) t = right(t);
    if (length(t) == keep) return t;
    // Here length(right(t)) < keep < length(t): the cut falls inside left(t).
    const SlpId r = right(t);
    const SlpId l = suffix(left(t), keep - length(r));
    return concat(l, r);
}

bool SlpStore::occurs_at(SlpId a, SlpId b, BigNat offset, MatchMemo& memo) const {
    const BigNat& la = length(a);
    while (!is_terminal(b)) {
        const BigNat& lb = length(left(b));
        if (offset + la <= lb) {
            b = left(b);
        } else if (offset >= lb) {
            offset -= lb;
            b = right(b);
        } else {
            break;
        }
    }
    if (a == b) return true;  // the window fits in b, so equal lengths force offset 0
    if (is_terminal(b)) return is_terminal(a) && terminal(a) == terminal(b);
    const auto ta = terminals(a);
    const auto tb = terminals(b);
    if (!std::includes(tb.begin(), tb.end(), ta.begin(), ta.end())) return false;
    if (tb.size() == 1) return true;  // both strings are powers of the same symbol

    MatchKey key{a.value, b.value, offset};
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    // The window straddles b's split, so length(a) >= 2 and a is a pair.
    const bool result = occurs_at(left(a), b, offset, memo) &&
                        occurs_at(right(a), b, offset + length(left(a)), memo);
    memo.emplace(std::move(key), result);
    return result;
}

bool SlpStore::equal(SlpId a, SlpId b) const {
    if (a == b) return true;
    if (length(a) != length(b)) return false;
    MatchMemo memo;
    return occurs_at(a, b, 0, memo);
}

bool SlpStore::is_prefix(SlpId a, SlpId b) const {
    if (a == b) return true;
    if (length(a) > length(b)) return false;
    MatchMemo memo;
    return occurs_at(a, b, 0, memo);
}

std::optional<BigNat> SlpStore::mismatch_in(SlpId a, SlpId b, const BigNat& offset, const BigNat& limit,
                                            MatchMemo& memo) const {
    if (limit == 0) return std::nullopt;
    if (limit == length(a) && occurs_at(a, b, offset, memo)) return std::nullopt;
    if (is_terminal(a)) return BigNat(0);
    const BigNat& ll = length(left(a));
    if (auto r = mismatch_in(left(a), b, offset, std::min(limit, ll), memo)) return r;
    if (limit > ll) {
        if (auto r = mismatch_in(right(a), b, offset + ll, limit - ll, memo)) return ll + *r;
    }
    return std::nullopt;
}

std::optional<Mismatch> SlpStore::first_mismatch(SlpId a, SlpId b) const {
    if (a == b) return std::nullopt;
    const BigNat limit = std::min(length(a), length(b));
    MatchMemo memo;
    auto pos = mismatch_in(a, b, 0, limit, memo);
    if (!pos) return std::nullopt;
    return Mismatch{*pos, char_at(a, *pos), char_at(b, *pos)};
}

VarId SlpStore::char_at(SlpId id, BigNat pos) const {
    if (pos >= length(id)) throw std::out_of_range("position past the end of the program");
    while (!is_terminal(id)) {
        const BigNat& ll = length(left(id));
        if (pos < ll) {
            id = left(id);
        } else {
            pos -= ll;
            id = right(id);
        }
    }
    return terminal(id);
}

std::vector<VarId> SlpStore::expand(SlpId id, std::size_t cap) const {
    if (length(id) > cap) throw ExpansionCapError("expanded length exceeds the cap");
    std::vector<VarId> out;
    out.reserve(static_cast<std::size_t>(length(id)));
    std::vector<SlpId> stack{id};
    while (!stack.empty()) {
        const SlpId cur = stack.back();
        stack.pop_back();
        if (is_terminal(cur)) {
            out.push_back(terminal(cur));
        } else {
            stack.push_back(right(cur));
            stack.push_back(left(cur));
        }
    }
    return out;
}

std::vector<bool> SlpStore::reachable(std::span<const SlpId> roots) const {
    std::vector<bool> seen(prods_.size(), false);
    std::vector<SlpId> stack(roots.begin(), roots.end());
    while (!stack.empty()) {
        const SlpId cur = stack.back();
        stack.pop_back();
        if (seen[cur.value]) continue;
        seen[cur.value] = true;
        if (!is_terminal(cur)) {
            stack.push_back(left(cur));
            stack.push_back(right(cur));
        }
    }
    return seen;
}

std::size_t SlpStore::size(SlpId id) const { return size(std::span<const SlpId>(&id, 1)); }

std::size_t SlpStore::size(std::span<const SlpId> roots) const {
    std::unordered_set<std::uint32_t> seen;
    std::vector<SlpId> stack(roots.begin(), roots.end());
    while (!stack.empty()) {
        const SlpId cur = stack.back();
        stack.pop_back();
        if (!seen.insert(cur.value).second) continue;
        if (!is_terminal(cur)) {
            stack.push_back(left(cur));
            stack.push_back(right(cur));
        }
    }
    return seen.size();
}

namespace {

void write_production(std::ostream& out, const VarTable& vars, std::uint32_t i, bool terminal, VarId sym,
                      SlpId l, SlpId r) {
    out << 'N' << (i + 1) << " -> ";
    if (terminal) {
        out << vars.name(sym) << '\n';
    } else {
        out << 'N' << (l.value + 1) << " N" << (r.value + 1) << '\n';
    }
}

}  // namespace

void SlpStore::write(std::ostream& out, const VarTable& vars, std::span<const SlpId> roots) const {
    const auto seen = reachable(roots);
    for (std::uint32_t i = 0; i < prods_.size(); ++i) {
        if (!seen[i]) continue;
        const Production& p = prods_[i];
        write_production(out, vars, i, p.terminal, p.symbol, p.left, p.right);
    }
}

void SlpStore::write_all(std::ostream& out, const VarTable& vars) const {
    for (std::uint32_t i = 0; i < prods_.size(); ++i) {
        const Production& p = prods_[i];
        write_production(out, vars, i, p.terminal, p.symbol, p.left, p.right);
    }
}

std::string to_string(const BigNat& n) { return n.str(); }

std::string to_binary(const BigNat& n) {
    if (n == 0) return "0";
    std::string bits;
    BigNat v = n;
    while (v > 0) {
        bits.push_back(static_cast<char>('0' + static_cast<int>(v & 1)));
        v >>= 1;
    }
    std::reverse(bits.begin(), bits.end());
    return bits;
}

}  // namespace osd
