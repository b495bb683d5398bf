// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Informational lines start with "  info:".

#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "osd/asymmetric.hpp"
#include "osd/baseline.hpp"
#include "osd/bench.hpp"
#include "osd/compressed.hpp"
#include "osd/generators.hpp"
#include "osd/homomorphism.hpp"
#include "osd/invariants.hpp"
#include "osd/solved_form.hpp"
#include "osd/text_io.hpp"
#include "asym_oracle.hpp"
#include "slp_oracle.hpp"

namespace {

using namespace osd;

/// Collects the reasons a criterion fails; passes when none were recorded.
class Check {
public:
    void require(bool ok, const std::string& what) {
        if (!ok && failures_.size() < 5) failures_.push_back(what);
        failed_ |= !ok;
    }
    void info(const std::string& line) { info_.push_back(line); }

    bool passed() const { return !failed_; }
    const std::vector<std::string>& failures() const { return failures_; }
    const std::vector<std::string>& infos() const { return info_; }

private:
    bool failed_ = false;
    std::vector<std::string> failures_;
    std::vector<std::string> info_;
};

template <class... Parts>
std::string cat(const Parts&... parts) {
    std::ostringstream out;
    (out << ... << parts);
    return out.str();
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// A unifier materializes under the cap, or the verdict is exempt.
enum class Soundness { Verified, Exempt, Broken };

Soundness sound(const StandardSystem& s, const DecisionResult& r) {
    if (!r.solved || !is_dag_solved(*r.solved)) return Soundness::Broken;
    try {
        const Substitution sigma = s.is_asymmetric() ? asym_unifier(r) : materialize(*r.solved);
        const VerifyReport report = verify_unifier(s, sigma);
        if (report.ok()) return Soundness::Verified;
        return report.not_materializable() ? Soundness::Exempt : Soundness::Broken;
    } catch (const MaterializationError&) {
        return Soundness::Exempt;
    }
}

void exponential_baseline(Check& c) {
    std::vector<std::uint64_t> counts;
    double seconds = 0;
    for (unsigned n = 0; n <= 6; ++n) {
        const auto r = ta_unify(generate_sigma(n));
        c.require(r.unifiable(), cat("sigma(", n, ") ", to_string(r.verdict)));
        counts.push_back(r.stats.rule("d"));
        seconds += r.stats.wall_seconds;
    }
    std::string shown;
    for (std::size_t n = 0; n < counts.size(); ++n) {
        shown += (n ? "," : "") + std::to_string(counts[n]);
        if (n > 0) c.require(counts[n] > counts[n - 1], cat("count not increasing at n=", n));
        if (n >= 3) {
            c.require(static_cast<double>(counts[n]) >= 2.0 * static_cast<double>(counts[n - 1]),
                      cat("ratio count(", n, ")/count(", n - 1, ") below 2"));
        }
    }
    c.require(seconds < 60.0, cat("total ", seconds, " s"));
    c.info(cat("rule-d counts n=0..6: ", shown, "; total ", seconds, " s"));
}

void polynomial_compressed(Check& c) {
    std::vector<double> sizes;
    std::vector<double> rules;
    double slowest = 0;
    for (unsigned n = 0; n <= 14; ++n) {
        const auto s = generate_sigma(n);
        const auto r = decide(s);
        c.require(r.unifiable(), cat("sigma(", n, ") ", to_string(r.verdict)));
        c.require(r.stats.wall_seconds < 10.0, cat("sigma(", n, ") took ", r.stats.wall_seconds, " s"));
        slowest = std::max(slowest, r.stats.wall_seconds);
        sizes.push_back(static_cast<double>(s.size()));
        rules.push_back(static_cast<double>(r.stats.total_rules()));
    }
    const auto slope = loglog_slope(sizes, rules);
    c.require(slope.has_value() && *slope <= 4.5, cat("slope ", slope.value_or(NAN)));
    c.info(cat("log-log slope of total rules vs |S|: ", slope.value_or(NAN), "; slowest run ", slowest, " s"));
}

void compression_witness(Check& c) {
    std::string observed;
    bool matches_shifted = true;
    for (unsigned n = 0; n <= 14; ++n) {
        const auto r = decide(generate_sigma(n));
        if (!r.unifiable()) {
            c.require(false, cat("sigma(", n, ") ", to_string(r.verdict)));
            continue;
        }
        const BigNat expected = (BigNat(1) << n) - 1;
        const std::string got = to_binary(r.stats.max_label_length);
        c.require(got == to_binary(expected), cat("n=", n, ": length ", got, "b, expected ", to_binary(expected), "b"));
        const std::size_t bound = 200 * static_cast<std::size_t>(std::pow(n + 1, 4));
        c.require(r.stats.max_label_slp_size <= bound,
                  cat("n=", n, ": ", r.stats.max_label_slp_size, " productions > ", bound));
        matches_shifted &= r.stats.max_label_length == (BigNat(1) << (n + 2)) - 1;
        if (n % 7 == 0) observed += cat(" n=", n, ":", got, "b/", r.stats.max_label_slp_size, "p");
    }
    c.info(cat("longest label (binary length / productions):", observed));
    if (matches_shifted) c.info("every longest label has length 2^(n+2)-1, which sigma(0) already forces to 3");
}

void oracle_equivalence(Check& c) {
    constexpr std::size_t kCorpus = 500;
    std::size_t finished = 0;
    std::size_t agree = 0;
    std::size_t unifiable = 0;
    for (std::uint64_t i = 0; i < kCorpus; ++i) {
        const auto s = generate_random(corpus_spec(i));
        const auto expected = ta_unify(s);
        if (expected.verdict == Verdict::BudgetExceeded) continue;
        ++finished;
        const auto r = decide(s);
        const bool same = r.verdict == expected.verdict;
        agree += same;
        unifiable += expected.unifiable();
        c.require(same, cat("corpus #", i, ": baseline ", to_string(expected.verdict), ", compressed ",
                            to_string(r.verdict)));
    }
    c.require(finished * 100 >= kCorpus * 95, cat(finished, "/", kCorpus, " finished"));
    c.info(cat(finished, "/", kCorpus, " finished within budget, ", agree, " agree, ", unifiable, " unifiable"));
}

void typed_fragment(Check& c) {
    std::size_t compared = 0;
    for (unsigned n = 0; n <= 10; ++n) {
        const auto s = generate_sigma(n);
        const auto typed = typecheck(s);
        c.require(typed.has_value(), cat("sigma(", n, ") rejected by typecheck"));
        if (!typed) continue;
        const auto h = decide_hom(*typed);
        const auto r = decide(s);
        ++compared;
        c.require(h.verdict == r.verdict, cat("sigma(", n, "): hom ", to_string(h.verdict)));
    }
    std::size_t typed_corpus = 0;
    for (std::uint64_t i = 0; i < 500; ++i) {
        const auto s = generate_random(corpus_spec(i));
        const auto typed = typecheck(s);
        if (!typed) continue;
        ++typed_corpus;
        const auto h = decide_hom(*typed);
        const auto r = decide(s);
        ++compared;
        c.require(h.verdict == r.verdict, cat("corpus #", i, ": hom ", to_string(h.verdict), ", compressed ",
                                              to_string(r.verdict)));
    }
    c.info(cat(compared, " comparisons, ", typed_corpus, "/500 corpus instances typed"));
}

void slp_properties(Check& c) {
    const auto r = testing::run_slp_suite(2024, 1000);
    c.require(r.programs == 1000, "program count");
    c.require(r.query_failures == 0, cat(r.query_failures, " query mismatches"));
    c.require(r.concat_identity_failures == 0, cat(r.concat_identity_failures, " concat identity failures"));
    c.require(r.suffix_failures == 0, cat(r.suffix_failures, " suffix bound failures"));
    c.info(cat(r.queries, " queries, ", r.concat_calls, " concat calls, ", r.suffix_calls, " suffix calls"));

    SlpStore store;
    const VarId a{0};
    const VarId b{1};
    SlpId root = store.concat(store.atom(a), store.atom(b));
    for (int k = 0; k < 5; ++k) root = store.concat(root, root);
    c.require(store.size(root) == 8, cat("(ab)^32 has ", store.size(root), " productions"));
    c.require(store.length(root) == 64, cat("(ab)^32 has length ", to_string(store.length(root))));
    const auto word = store.expand(root);
    bool alternating = word.size() == 64;
    for (std::size_t i = 0; alternating && i < word.size(); ++i) alternating = word[i] == (i % 2 ? b : a);
    c.require(alternating, "(ab)^32 expands to a different word");
}

void unifier_soundness(Check& c) {
    std::size_t verified = 0;
    std::size_t exempt = 0;
    auto record = [&](const StandardSystem& s, const DecisionResult& r, const std::string& what) {
        if (!r.unifiable()) return;
        switch (sound(s, r)) {
            case Soundness::Verified: ++verified; break;
            case Soundness::Exempt: ++exempt; break;
            case Soundness::Broken: c.require(false, what + ": unifier does not verify"); break;
        }
    };
    for (std::uint64_t i = 0; i < 500; ++i) {
        const auto s = generate_random(corpus_spec(i));
        const std::string tag = cat("corpus #", i);
        record(s, ta_unify(s), tag + " ta");
        record(s, decide(s), tag + " slp");
        record(s, asym_unify(s), tag + " asym");
        if (const auto typed = typecheck(s)) record(s, decide_hom(*typed), tag + " hom");
    }
    for (unsigned n = 0; n <= 14; ++n) {
        const auto s = generate_sigma(n);
        if (n <= 6) record(s, ta_unify(s), cat("sigma(", n, ") ta"));
        const auto r = decide(s);
        record(s, r, cat("sigma(", n, ") slp"));
        if (const auto typed = typecheck(s)) record(s, decide_hom(*typed), cat("sigma(", n, ") hom"));
        if (n <= 3) {
            c.require(r.unifiable() && sound(s, r) == Soundness::Verified,
                      cat("sigma(", n, ") compressed expansion does not verify"));
        }
    }
    for (unsigned n = 0; n <= 5; ++n) {
        const auto s = generate_sigma_prime(n);
        record(s, asym_unify(s), cat("sigma'(", n, ") asym"));
    }
    c.info(cat(verified, " unifiers verified, ", exempt, " above the materialization cap"));
}

void asymmetric_suite(Check& c) {
    struct Premise {
        const char* text;
        const char* rule;
        FailureReason reason;
    };
    const Premise premises[] = {
        {"U =d V * W\nU =d X + Y\n", "e", FailureReason::RuleE},
        {"U =d V * W\nX + Y =d U\n", "f", FailureReason::RuleF},
        {"U =d V * W\nW =d X + Y\n", "e'", FailureReason::RuleEPrime},
        {"U =d V * W\nX + Y =d W\n", "f'", FailureReason::RuleFPrime},
    };
    for (const auto& p : premises) {
        auto s = parse_problem(p.text);
        const auto r = asym_unify(s);
        c.require(!r.unifiable() && r.reason == p.reason && r.stats.rule(p.rule) == 1,
                  cat("premise pair for rule ", p.rule, " ended with ", to_string(r.reason)));
        const auto pool = testing::term_pool(s.vars);
        c.require(!testing::brute_force(s, pool).has_value(), cat("brute force unifies the rule ", p.rule, " pair"));
    }

    std::vector<std::uint64_t> splits;
    std::size_t checked = 0;
    for (unsigned n = 0; n <= 5; ++n) {
        const auto s = generate_sigma_prime(n);
        const auto r = asym_unify(s);
        c.require(r.unifiable(), cat("sigma'(", n, ") ", to_string(r.verdict)));
        if (!r.unifiable()) continue;
        splits.push_back(splitting_count(Algorithm::Asym, r.stats));
        c.require(check_asymmetry(asym_unifier(r), s), cat("sigma'(", n, ") unifier fails check_asymmetry"));
        ++checked;
    }
    std::string shown;
    for (std::size_t n = 0; n < splits.size(); ++n) {
        shown += (n ? "," : "") + std::to_string(splits[n]);
        if (n >= 3) {
            c.require(static_cast<double>(splits[n]) >= 2.0 * static_cast<double>(splits[n - 1]),
                      cat("split ratio below 2 at n=", n));
        }
    }

    std::mt19937_64 rng(99);
    for (int k = 0; k < 300; ++k) {
        const auto s = testing::random_asym(rng);
        const auto r = asym_unify(s);
        if (!r.unifiable()) continue;
        c.require(check_asymmetry(asym_unifier(r), s), cat("random asymmetric system #", k));
        ++checked;
    }
    c.info(cat("sigma' splitting counts n=0..5: ", shown, "; ", checked, " unifiers pass check_asymmetry"));
}

void failure_detection(Check& c) {
    struct Case {
        const char* text;
        FailureReason reason;
    };
    const Case cases[] = {
        {"Z = V2 + V3\nZ = V1 * V3\n", FailureReason::PropagationCycle},
        {"X = X1 + X2\nX = V * X2\n", FailureReason::PropagationCycle},
        {"X = A + B\nA = T * X\n", FailureReason::DependencyCycle},
    };
    for (const auto& k : cases) {
        const auto s = parse_problem(k.text);
        for (const auto& [name, r] : {std::pair{"baseline", ta_unify(s)}, std::pair{"compressed", decide(s)}}) {
            c.require(r.verdict == Verdict::NotUnifiable && r.reason == k.reason,
                      cat(name, " on {", s.size(), " equations, ", to_string(k.reason), "} gave ",
                          to_string(r.reason)));
        }
    }
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<void(Check&)> run;
    };
    const Criterion criteria[] = {
        {"1 exponential baseline", exponential_baseline},
        {"2 polynomial compressed decider", polynomial_compressed},
        {"3 compression witness", compression_witness},
        {"4 oracle equivalence", oracle_equivalence},
        {"5 typed fragment", typed_fragment},
        {"6 SLP property suite", slp_properties},
        {"7 unifier soundness", unifier_soundness},
        {"8 asymmetric suite", asymmetric_suite},
        {"9 failure detection", failure_detection},
    };

    bool all = true;
    auto report = [&](const char* name, const Check& c, double seconds) {
        std::cout << (c.passed() ? "PASS" : "FAIL") << "  criterion " << name << " (" << seconds << " s)\n";
        for (const auto& f : c.failures()) std::cout << "  fail: " << f << "\n";
        for (const auto& i : c.infos()) std::cout << "  info: " << i << "\n";
        std::cout.flush();
        all &= c.passed();
    };
    for (const auto& criterion : criteria) {
        Check c;
        const auto start = std::chrono::steady_clock::now();
        try {
            criterion.run(c);
        } catch (const std::exception& e) {
            c.require(false, cat("exception: ", e.what()));
        }
        report(criterion.name, c, seconds_since(start));
    }

    Check bookkeeping;
    bookkeeping.require(OSD_CHECK_INVARIANTS != 0, "invariant checks are compiled out");
    bookkeeping.require(invariant_failures() == 0, cat(invariant_failures(), " invariant failures"));
    bookkeeping.info(cat(invariant_failures(), " invariant failures across criteria 1-9"));
    report("10 bookkeeping invariants", bookkeeping, 0.0);
    return all ? 0 : 1;
}
