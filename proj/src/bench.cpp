#include "osd/bench.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "osd/asymmetric.hpp"
#include "osd/baseline.hpp"
#include "osd/compressed.hpp"
#include "osd/generators.hpp"
#include "osd/homomorphism.hpp"

namespace osd {

const char* to_string(Algorithm a) {
    switch (a) {
        case Algorithm::Baseline: return "ta";
        case Algorithm::Hom: return "hom";
        case Algorithm::Compressed: return "slp";
        case Algorithm::Asym: return "asym";
    }
    return "?";
}

const char* to_string(Family f) {
    switch (f) {
        case Family::Sigma: return "sigma";
        case Family::SigmaPrime: return "sigma-prime";
        case Family::Random: return "random";
    }
    return "?";
}

std::optional<Algorithm> parse_algorithm(const std::string& s) {
    for (auto a : {Algorithm::Baseline, Algorithm::Hom, Algorithm::Compressed, Algorithm::Asym}) {
        if (s == to_string(a)) return a;
    }
    return std::nullopt;
}

std::optional<Family> parse_family(const std::string& s) {
    for (auto f : {Family::Sigma, Family::SigmaPrime, Family::Random}) {
        if (s == to_string(f)) return f;
    }
    return std::nullopt;
}

StandardSystem make_instance(Family f, std::uint64_t n) {
    switch (f) {
        case Family::Sigma: return generate_sigma(static_cast<unsigned>(n));
        case Family::SigmaPrime: return generate_sigma_prime(static_cast<unsigned>(n));
        case Family::Random: return generate_random(corpus_spec(n));
    }
    return {};
}

std::uint64_t splitting_count(Algorithm a, const RunStats& stats) {
    switch (a) {
        case Algorithm::Baseline: return stats.rule("d");
        case Algorithm::Hom: return stats.rule("vii");
        case Algorithm::Compressed: return stats.rule("vii") + stats.rule("viii");
        case Algorithm::Asym: return stats.rule("g") + stats.rule("h");
    }
    return 0;
}

namespace {

struct Outcome {
    std::optional<Verdict> decision;
    FailureReason reason = FailureReason::None;
    RunStats stats;
    std::string note;
};

Outcome run_one(Algorithm a, const StandardSystem& s, std::uint64_t budget) {
    const DecideOptions opts{budget, false};
    Outcome out;
    try {
        std::optional<DecisionResult> r;
        const StandardSystem symmetric = s.is_asymmetric() ? symmetric_erasure(s) : s;
        switch (a) {
            case Algorithm::Baseline: r = ta_unify(symmetric, opts); break;
            case Algorithm::Compressed: r = decide(symmetric, opts); break;
            case Algorithm::Asym: r = asym_unify(s, opts); break;
            case Algorithm::Hom: {
                std::string why;
                if (auto typed = typecheck(symmetric, &why)) {
                    r = decide_hom(*typed, opts);
                } else {
                    out.note = "outside fragment: " + why;
                }
                break;
            }
        }
        if (r) {
            out.decision = r->verdict;
            out.reason = r->reason;
            out.stats = std::move(r->stats);
        }
    } catch (const std::exception& e) {
        out.note = std::string("error: ") + e.what();
    }
    return out;
}

std::optional<bool> agreement(Algorithm a, const std::optional<Verdict>& decision, const std::optional<Verdict>& oracle) {
    const auto finished = [](const std::optional<Verdict>& v) { return v && *v != Verdict::BudgetExceeded; };
    if (!finished(decision) || !finished(oracle)) return std::nullopt;
    // An asymmetric unifier is also a unifier of the erasure; the converse fails.
    if (a == Algorithm::Asym) return *decision != Verdict::Unifiable || *oracle == Verdict::Unifiable;
    return *decision == *oracle;
}

}  // namespace

BenchReport run_bench(const BenchConfig& config) {
    BenchReport report;
    struct Instance {
        Family family;
        std::uint64_t n;
        StandardSystem system;
        std::optional<Verdict> oracle;
    };
    std::vector<Instance> instances;
    for (Family f : config.families) {
        for (std::uint64_t n = config.min_n; n <= config.max_n; ++n) instances.push_back({f, n, make_instance(f, n), {}});
    }
    if (instances.empty() || config.algorithms.empty()) return report;

    const bool baseline_listed =
        std::find(config.algorithms.begin(), config.algorithms.end(), Algorithm::Baseline) != config.algorithms.end();
    const std::size_t per_instance = config.algorithms.size();
    std::vector<Outcome> outcomes(instances.size() * per_instance);
    std::vector<Outcome> oracles(config.oracle && !baseline_listed ? instances.size() : 0);
    const std::size_t tasks = outcomes.size() + oracles.size();

#pragma omp parallel for schedule(dynamic) if (config.parallel)
    for (std::size_t k = 0; k < tasks; ++k) {
        if (k < outcomes.size()) {
            const auto& inst = instances[k / per_instance];
            outcomes[k] = run_one(config.algorithms[k % per_instance], inst.system, config.budget);
        } else {
            const std::size_t i = k - outcomes.size();
            oracles[i] = run_one(Algorithm::Baseline, instances[i].system, config.oracle_budget);
        }
    }

    for (std::size_t i = 0; i < instances.size(); ++i) {
        auto& inst = instances[i];
        if (!config.oracle) continue;
        if (baseline_listed) {
            const auto at = std::find(config.algorithms.begin(), config.algorithms.end(), Algorithm::Baseline);
            inst.oracle = outcomes[i * per_instance + static_cast<std::size_t>(at - config.algorithms.begin())].decision;
        } else {
            inst.oracle = oracles[i].decision;
        }
    }
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
        const auto& inst = instances[k / per_instance];
        const Algorithm a = config.algorithms[k % per_instance];
        Outcome& o = outcomes[k];
        BenchRow row{inst.family, inst.n, a, inst.system.size(), o.decision, o.reason, inst.oracle, {}, std::move(o.stats), std::move(o.note)};
        row.agrees = agreement(a, row.decision, row.oracle);
        report.rows.push_back(std::move(row));
    }

    for (Family f : config.families) {
        for (Algorithm a : config.algorithms) {
            GrowthSummary g{f, a, {}, {}, {}, {}};
            std::vector<double> xs;
            std::vector<double> ys;
            for (const auto& row : report.rows) {
                if (row.family != f || row.algorithm != a || !row.decision) continue;
                if (*row.decision == Verdict::BudgetExceeded) {
                    g.excluded.push_back(row.n);
                    continue;
                }
                g.splitting.push_back(splitting_count(a, row.stats));
                xs.push_back(static_cast<double>(row.equations));
                ys.push_back(static_cast<double>(row.stats.total_rules()));
            }
            for (std::size_t i = 0; i + 1 < g.splitting.size(); ++i) {
                g.splitting_ratios.push_back(g.splitting[i] == 0 ? 0.0
                                                                 : static_cast<double>(g.splitting[i + 1]) /
                                                                       static_cast<double>(g.splitting[i]));
            }
            g.slope = loglog_slope(xs, ys);
            report.growth.push_back(std::move(g));
        }
    }
    return report;
}

std::optional<double> loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < std::min(xs.size(), ys.size()); ++i) {
        if (xs[i] > 0 && ys[i] > 0) pts.emplace_back(std::log(xs[i]), std::log(ys[i]));
    }
    if (pts.size() < 2) return std::nullopt;
    double mx = 0;
    double my = 0;
    for (auto [x, y] : pts) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxy = 0;
    double sxx = 0;
    for (auto [x, y] : pts) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    if (sxx == 0) return std::nullopt;
    return sxy / sxx;
}

namespace {

std::string verdict_cell(const std::optional<Verdict>& v) { return v ? to_string(*v) : ""; }

}  // namespace

void write_csv(std::ostream& out, const BenchReport& report) {
    out << "family,n,algorithm,equations,decision,reason,oracle,agrees,total_rules,splitting,fresh_vars,"
           "max_slp_size,max_label_length_bin,wall_seconds,note,rules\n";
    for (const auto& r : report.rows) {
        std::string rules;
        for (const auto& [name, count] : r.stats.rules) {
            rules += (rules.empty() ? "" : ";") + name + "=" + std::to_string(count);
        }
        std::string note = r.note;
        std::replace(note.begin(), note.end(), ',', ';');
        std::replace(note.begin(), note.end(), '"', '\'');
        out << to_string(r.family) << ',' << r.n << ',' << to_string(r.algorithm) << ',' << r.equations << ','
            << verdict_cell(r.decision) << ',' << (r.decision ? to_string(r.reason) : "") << ','
            << verdict_cell(r.oracle) << ',' << (r.agrees ? (*r.agrees ? "yes" : "no") : "") << ','
            << r.stats.total_rules() << ',' << splitting_count(r.algorithm, r.stats) << ','
            << r.stats.fresh_variables << ',' << r.stats.max_slp_size << ',' << to_binary(r.stats.max_label_length)
            << ',' << r.stats.wall_seconds << ',' << note << ',' << rules << '\n';
    }
}

void write_summary(std::ostream& out, const BenchReport& report) {
    for (const auto& g : report.growth) {
        out << to_string(g.family) << ' ' << to_string(g.algorithm) << ": splitting";
        for (auto c : g.splitting) out << ' ' << c;
        out << "; ratios";
        for (auto r : g.splitting_ratios) out << ' ' << r;
        out << "; slope ";
        if (g.slope) {
            out << *g.slope;
        } else {
            out << "n/a";
        }
        if (!g.excluded.empty()) {
            out << "; budget exceeded at n =";
            for (auto n : g.excluded) out << ' ' << n;
        }
        out << '\n';
    }
    std::size_t disagreements = 0;
    for (const auto& r : report.rows) disagreements += r.agrees && !*r.agrees;
    out << "rows " << report.rows.size() << ", oracle disagreements " << disagreements << '\n';
}

}  // namespace osd
