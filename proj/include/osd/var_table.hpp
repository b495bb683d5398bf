#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace osd {

/// Interned variable handle. Ids are dense and allocation-ordered, so a
/// smaller id always means an older variable.
struct VarId {
    std::uint32_t value = 0;

    friend constexpr auto operator<=>(VarId, VarId) = default;
};

/// Prefix reserved for variables introduced by the algorithms. User
/// identifiers must start with a letter, so they can never collide.
inline constexpr std::string_view kFreshPrefix = "_";

class VarTable {
public:
    /// Returns the id for `name`, registering it as an original variable if new.
    VarId intern(std::string_view name);
    std::optional<VarId> find(std::string_view name) const;

    /// Registers a new variable named `_<stem><counter>`.
    VarId fresh(std::string_view stem = "W");

    const std::string& name(VarId v) const { return names_[v.value]; }
    bool is_fresh(VarId v) const { return fresh_[v.value] != 0; }
    std::size_t size() const { return names_.size(); }

private:
    VarId add(std::string name, bool fresh);

    std::vector<std::string> names_;
    std::vector<char> fresh_;
    std::unordered_map<std::string, VarId> index_;
    std::uint64_t fresh_counter_ = 0;
};

bool is_user_identifier(std::string_view s);

}  // namespace osd

template <>
struct std::hash<osd::VarId> {
    std::size_t operator()(osd::VarId v) const noexcept { return std::hash<std::uint32_t>{}(v.value); }
};
