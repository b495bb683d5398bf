#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "osd/stats.hpp"
#include "osd/system.hpp"

namespace osd {

enum class Algorithm { Baseline, Hom, Compressed, Asym };
enum class Family { Sigma, SigmaPrime, Random };

/// CLI spellings: ta, hom, slp, asym / sigma, sigma-prime, random.
const char* to_string(Algorithm a);
const char* to_string(Family f);
std::optional<Algorithm> parse_algorithm(const std::string& s);
std::optional<Family> parse_family(const std::string& s);

/// Instance `n` of a family; for the random family `n` indexes the seeded corpus.
StandardSystem make_instance(Family f, std::uint64_t n);

/// Rule applications that split a variable, per algorithm.
std::uint64_t splitting_count(Algorithm a, const RunStats& stats);

struct BenchRow {
    Family family;
    std::uint64_t n;
    Algorithm algorithm;
    std::size_t equations = 0;
    std::optional<Verdict> decision;  // empty when the instance is outside the algorithm's fragment
    FailureReason reason = FailureReason::None;
    std::optional<Verdict> oracle;    // baseline on the symmetric erasure
    std::optional<bool> agrees;       // empty when either side did not finish
    RunStats stats;
    std::string note;
};

struct GrowthSummary {
    Family family;
    Algorithm algorithm;
    std::vector<std::uint64_t> splitting;   // by increasing n, finished rows only
    std::vector<double> splitting_ratios;   // splitting[i+1] / splitting[i]
    std::optional<double> slope;            // log total rules against log |S|
    std::vector<std::uint64_t> excluded;    // n of rows that ran out of budget
};

struct BenchReport {
    std::vector<BenchRow> rows;
    std::vector<GrowthSummary> growth;
};

struct BenchConfig {
    std::vector<Family> families;
    std::vector<Algorithm> algorithms;
    std::uint64_t min_n = 0;
    std::uint64_t max_n = 0;
    std::uint64_t budget = 10'000'000;
    std::uint64_t oracle_budget = 5'000;  // the baseline finishes sigma(n) up to n = 9 within this
    bool oracle = true;
    /// Run instances on OpenMP worker threads. Each run stays single-threaded.
    bool parallel = true;
};

BenchReport run_bench(const BenchConfig& config);

/// Least-squares slope of log y against log x over the positive pairs.
std::optional<double> loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys);

/// One header line, then one line per row. The rule map is the last column
/// as `name=count` pairs joined by `;`.
void write_csv(std::ostream& out, const BenchReport& report);
void write_summary(std::ostream& out, const BenchReport& report);

}  // namespace osd
