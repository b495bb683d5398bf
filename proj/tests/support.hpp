#pragma once

#include <gtest/gtest.h>

#include "osd/solved_form.hpp"
#include "osd/stats.hpp"
#include "osd/term.hpp"
#include "osd/text_io.hpp"
#include "reference_rewrite.hpp"

namespace osd::testing {

inline StandardSystem problem(const std::string& text) { return parse_problem(text); }

/// The solved form's unifier satisfies every equation of `s`.
inline ::testing::AssertionResult unifies(const StandardSystem& s, const DecisionResult& r,
                                          std::uint64_t cap = kDefaultMaterializationCap) {
    if (!r.solved) return ::testing::AssertionFailure() << "no solved form";
    if (!is_dag_solved(*r.solved)) return ::testing::AssertionFailure() << "solved form is not dag-solved";
    const VerifyReport report = verify_unifier(s, materialize(*r.solved, cap), cap);
    if (report.ok()) return ::testing::AssertionSuccess();
    const auto& e = s.equations[*report.first_failure];
    return ::testing::AssertionFailure() << to_string(report.verdicts[*report.first_failure]) << ": "
                                         << to_string(e, s.vars);
}

}  // namespace osd::testing
