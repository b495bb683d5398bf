#include "osd/var_table.hpp"

#include <cctype>

namespace osd {

VarId VarTable::intern(std::string_view name) {
    if (auto found = find(name)) return *found;
    return add(std::string(name), false);
}

std::optional<VarId> VarTable::find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

VarId VarTable::fresh(std::string_view stem) {
    std::string name;
    do {
        name = std::string(kFreshPrefix) + std::string(stem) + std::to_string(++fresh_counter_);
    } while (index_.count(name) != 0);
    return add(std::move(name), true);
}

VarId VarTable::add(std::string name, bool fresh) {
    const VarId id{static_cast<std::uint32_t>(names_.size())};
    index_.emplace(name, id);
    names_.push_back(std::move(name));
    fresh_.push_back(fresh ? 1 : 0);
    return id;
}

bool is_user_identifier(std::string_view s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front()))) return false;
    for (char c : s) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    }
    return true;
}

}  // namespace osd
