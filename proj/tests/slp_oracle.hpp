#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "osd/slp.hpp"

namespace osd::testing {

/// Tallies of the random-program suite; every `*_failures` field must stay 0.
struct SlpSuiteResult {
    std::size_t programs = 0;
    std::size_t queries = 0;
    std::size_t query_failures = 0;
    std::size_t equal_hits = 0;   // distinct nodes with the same string
    std::size_t prefix_hits = 0;  // proper prefixes
    std::size_t concat_calls = 0;
    std::size_t concat_identity_failures = 0;
    std::size_t suffix_calls = 0;
    std::size_t suffix_failures = 0;
};

namespace detail {

using Str = std::vector<VarId>;

inline std::optional<Mismatch> oracle_mismatch(const Str& a, const Str& b) {
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        if (a[i] != b[i]) return Mismatch{BigNat(i), a[i], b[i]};
    }
    return std::nullopt;
}

inline bool oracle_prefix(const Str& a, const Str& b) {
    return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

}  // namespace detail

/// Random programs over two letters (three now and then) with depth at most
/// 12, queried against their decompressions. Concat is checked for
/// |K| = |P_I ∪ P_J| + 1 and suffix for |K| <= |I| + depth(I) on every call.
inline SlpSuiteResult run_slp_suite(std::uint64_t seed, std::size_t programs, std::size_t queries_per_program = 20) {
    using detail::Str;
    constexpr std::uint32_t kMaxDepth = 12;
    const BigNat max_length = BigNat(1) << 20;
    std::mt19937_64 rng(seed);
    SlpSuiteResult out;

    for (std::size_t program = 0; program < programs; ++program) {
        ++out.programs;
        SlpStore store;
        std::vector<SlpId> nodes;
        auto concat = [&](SlpId x, SlpId y) {
            const SlpId pair[] = {x, y};
            const std::size_t union_size = store.size(pair);
            const SlpId k = store.concat(x, y);
            ++out.concat_calls;
            if (store.size(k) != union_size + 1 || store.length(k) != store.length(x) + store.length(y)) {
                ++out.concat_identity_failures;
            }
            return k;
        };
        const unsigned letters = rng() % 4 == 0 ? 3 : 2;
        for (unsigned i = 0; i < letters; ++i) nodes.push_back(store.atom(VarId{i}));
        const unsigned steps = 8 + static_cast<unsigned>(rng() % 24);
        for (unsigned k = 0; k < steps; ++k) {
            auto any = [&] { return nodes[rng() % nodes.size()]; };
            const unsigned kind = static_cast<unsigned>(rng() % 6);
            if (kind == 0) {
                const SlpId id = any();
                const BigNat keep = 1 + BigNat(rng() % static_cast<std::uint64_t>(store.length(id)));
                const SlpId tail_id = store.suffix(id, keep);
                ++out.suffix_calls;
                const Str whole = store.expand(id);
                const Str tail = store.expand(tail_id);
                const bool ok = store.size(tail_id) <= store.size(id) + store.depth(id) && BigNat(tail.size()) == keep &&
                                std::equal(tail.begin(), tail.end(), whole.end() - static_cast<std::ptrdiff_t>(tail.size()));
                out.suffix_failures += !ok;
                if (store.depth(tail_id) <= kMaxDepth) nodes.push_back(tail_id);
            } else if (kind == 1) {
                // The same string under two parse trees.
                const SlpId x = any();
                const SlpId y = any();
                const SlpId z = any();
                if (std::max({store.depth(x), store.depth(y), store.depth(z)}) + 2 > kMaxDepth) continue;
                if (store.length(x) + store.length(y) + store.length(z) > max_length) continue;
                nodes.push_back(concat(concat(x, y), z));
                nodes.push_back(concat(x, concat(y, z)));
            } else {
                const SlpId x = any();
                const SlpId y = any();
                if (std::max(store.depth(x), store.depth(y)) + 1 > kMaxDepth) continue;
                if (store.length(x) + store.length(y) > max_length) continue;
                nodes.push_back(concat(x, y));
            }
        }

        std::vector<Str> expanded;
        for (SlpId id : nodes) expanded.push_back(store.expand(id));
        for (std::size_t q = 0; q < queries_per_program; ++q) {
            const std::size_t i = rng() % nodes.size();
            const std::size_t j = rng() % nodes.size();
            const SlpId a = nodes[i];
            const SlpId b = nodes[j];
            const bool eq = expanded[i] == expanded[j];
            const bool pre = detail::oracle_prefix(expanded[i], expanded[j]);
            out.equal_hits += eq && i != j;
            out.prefix_hits += pre && !eq;
            bool ok = store.equal(a, b) == eq && store.is_prefix(a, b) == pre;
            const auto m = store.first_mismatch(a, b);
            const auto om = detail::oracle_mismatch(expanded[i], expanded[j]);
            ok = ok && m.has_value() == om.has_value();
            if (ok && m) ok = m->position == om->position && m->first == om->first && m->second == om->second;
            const std::size_t pos = rng() % expanded[i].size();
            ok = ok && store.char_at(a, BigNat(pos)) == expanded[i][pos];
            ok = ok && BigNat(expanded[i].size()) == store.length(a) && store.depth(a) <= kMaxDepth;
            ++out.queries;
            out.query_failures += !ok;
        }
    }
    return out;
}

}  // namespace osd::testing
