#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "osd/slp.hpp"
#include "osd/solved_form.hpp"

namespace osd {

enum class Verdict { Unifiable, NotUnifiable, BudgetExceeded };

enum class FailureReason {
    None,
    DependencyCycle,
    PropagationCycle,
    RuleE,
    RuleEPrime,
    RuleF,
    RuleFPrime,
};

const char* to_string(Verdict v);
const char* to_string(FailureReason r);

struct RunStats {
    std::map<std::string, std::uint64_t> rules;  // applications per rule name
    std::uint64_t sum_transformations = 0;
    std::uint64_t fresh_variables = 0;
    std::uint64_t restarts = 0;
    std::uint64_t class_reprocessing = 0;
    std::size_t initial_labels = 0;
    std::size_t final_labels = 0;
    std::size_t class_count = 0;
    std::size_t max_slp_size = 0;
    std::uint32_t max_slp_depth = 0;
    BigNat max_label_length = 0;
    std::size_t max_label_slp_size = 0;  // production count of the longest final label
    double wall_seconds = 0.0;
    std::string fragment;

    void count(const std::string& rule, std::uint64_t n = 1) { rules[rule] += n; }
    std::uint64_t rule(const std::string& name) const;
    std::uint64_t total_rules() const;

    /// `key=value` lines.
    void write(std::ostream& out) const;
};

/// Outcome of one decider run. `solved` is set iff the verdict is Unifiable.
struct DecisionResult {
    Verdict verdict = Verdict::NotUnifiable;
    FailureReason reason = FailureReason::None;
    RunStats stats;
    std::optional<SolvedForm> solved;
    std::vector<std::string> trace;
    std::string detail;  // cycle witness or failing equations, for diagnostics

    bool unifiable() const { return verdict == Verdict::Unifiable; }
};

struct DecideOptions {
    std::uint64_t budget = 10'000'000;
    bool trace = false;
};

}  // namespace osd
