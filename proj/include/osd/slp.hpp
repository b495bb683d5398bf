#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "osd/var_table.hpp"

namespace osd {

using BigNat = boost::multiprecision::cpp_int;

/// Handle to a nonterminal of an SlpStore. Children of a production always
/// have smaller ids than the production itself.
struct SlpId {
    std::uint32_t value = 0;

    friend constexpr auto operator<=>(SlpId, SlpId) = default;
};

struct Mismatch {
    BigNat position;  // 0-based
    VarId first;
    VarId second;
};

inline constexpr std::size_t kDefaultExpandCap = std::size_t{1} << 20;

class ExpansionCapError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Hash-consed, append-only store of straight-line programs over label
/// variables. Lengths are exact big integers; nothing here decompresses
/// except expand() and char_at().
class SlpStore {
public:
    SlpId atom(VarId terminal);
    SlpId concat(SlpId left, SlpId right);
    /// Last `keep` symbols of `id`; requires 1 <= keep <= length(id).
    SlpId suffix(SlpId id, const BigNat& keep);

    bool equal(SlpId a, SlpId b) const;
    bool is_prefix(SlpId a, SlpId b) const;
    /// Least position below min(length(a), length(b)) where the strings differ.
    std::optional<Mismatch> first_mismatch(SlpId a, SlpId b) const;

    std::vector<VarId> expand(SlpId id, std::size_t cap = kDefaultExpandCap) const;
    VarId char_at(SlpId id, BigNat pos) const;

    bool is_terminal(SlpId id) const { return prods_[id.value].terminal; }
    VarId terminal(SlpId id) const { return prods_[id.value].symbol; }
    SlpId left(SlpId id) const { return prods_[id.value].left; }
    SlpId right(SlpId id) const { return prods_[id.value].right; }
    const BigNat& length(SlpId id) const { return prods_[id.value].length; }
    std::uint32_t depth(SlpId id) const { return prods_[id.value].depth; }
    /// Distinct terminals of the produced string, ascending.
    std::span<const VarId> terminals(SlpId id) const { return prods_[id.value].terminals; }

    /// Number of productions reachable from `id`, itself included.
    std::size_t size(SlpId id) const;
    /// Number of distinct productions reachable from any of `roots`.
    std::size_t size(std::span<const SlpId> roots) const;
    std::size_t production_count() const { return prods_.size(); }

    /// Writes `Ni -> a` / `Ni -> Nj Nk` lines, ids ascending (1-based).
    /// With `roots` given, only productions reachable from them are written.
    void write(std::ostream& out, const VarTable& vars, std::span<const SlpId> roots) const;
    void write_all(std::ostream& out, const VarTable& vars) const;

private:
    struct Production {
        bool terminal = false;
        VarId symbol{};
        SlpId left{};
        SlpId right{};
        BigNat length;
        std::uint32_t depth = 0;
        std::vector<VarId> terminals;
    };

    struct MatchKey {
        std::uint32_t a;
        std::uint32_t b;
        BigNat offset;
        friend bool operator==(const MatchKey&, const MatchKey&) = default;
    };
    struct MatchKeyHash {
        std::size_t operator()(const MatchKey& k) const noexcept;
    };
    using MatchMemo = std::unordered_map<MatchKey, bool, MatchKeyHash>;

    bool occurs_at(SlpId a, SlpId b, BigNat offset, MatchMemo& memo) const;
    std::optional<BigNat> mismatch_in(SlpId a, SlpId b, const BigNat& offset, const BigNat& limit,
                                      MatchMemo& memo) const;
    std::vector<bool> reachable(std::span<const SlpId> roots) const;

    std::vector<Production> prods_;
    std::unordered_map<std::uint32_t, SlpId> atoms_;
    std::unordered_map<std::uint64_t, SlpId> pairs_;
};

std::string to_string(const BigNat& n);
/// Binary rendering, as used in stats output.
std::string to_binary(const BigNat& n);

}  // namespace osd

template <>
struct std::hash<osd::SlpId> {
    std::size_t operator()(osd::SlpId v) const noexcept { return std::hash<std::uint32_t>{}(v.value); }
};
