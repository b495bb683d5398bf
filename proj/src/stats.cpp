#include "osd/stats.hpp"

#include <numeric>

namespace osd {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Unifiable: return "unifiable";
        case Verdict::NotUnifiable: return "not-unifiable";
        case Verdict::BudgetExceeded: return "budget-exceeded";
    }
    return "?";
}

const char* to_string(FailureReason r) {
    switch (r) {
        case FailureReason::None: return "none";
        case FailureReason::DependencyCycle: return "dependency-cycle";
        case FailureReason::PropagationCycle: return "propagation-cycle";
        case FailureReason::RuleE: return "rule-e";
        case FailureReason::RuleEPrime: return "rule-e'";
        case FailureReason::RuleF: return "rule-f";
        case FailureReason::RuleFPrime: return "rule-f'";
    }
    return "?";
}

std::uint64_t RunStats::rule(const std::string& name) const {
    auto it = rules.find(name);
    return it == rules.end() ? 0 : it->second;
}

std::uint64_t RunStats::total_rules() const {
    return std::accumulate(rules.begin(), rules.end(), std::uint64_t{0},
                           [](std::uint64_t acc, const auto& kv) { return acc + kv.second; });
}

void RunStats::write(std::ostream& out) const {
    if (!fragment.empty()) out << "fragment: " << fragment << '\n';
    for (const auto& [name, n] : rules) out << "rule_" << name << '=' << n << '\n';
    out << "rules_total=" << total_rules() << '\n'
        << "sum_transformations=" << sum_transformations << '\n'
        << "fresh_variables=" << fresh_variables << '\n'
        << "restarts=" << restarts << '\n'
        << "class_reprocessing=" << class_reprocessing << '\n'
        << "initial_labels=" << initial_labels << '\n'
        << "final_labels=" << final_labels << '\n'
        << "class_count=" << class_count << '\n'
        << "max_slp_size=" << max_slp_size << '\n'
        << "max_slp_depth=" << max_slp_depth << '\n'
        << "max_label_length=" << to_binary(max_label_length) << '\n'
        << "max_label_slp_size=" << max_label_slp_size << '\n'
        << "wall_seconds=" << wall_seconds << '\n';
}

}  // namespace osd
