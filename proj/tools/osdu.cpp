// Command-line front end for the one-sided distributivity unifiers.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "osd/asymmetric.hpp"
#include "osd/baseline.hpp"
#include "osd/bench.hpp"
#include "osd/compressed.hpp"
#include "osd/generators.hpp"
#include "osd/homomorphism.hpp"
#include "osd/text_io.hpp"

namespace {

using namespace osd;

enum Exit { kOk = 0, kFailed = 1, kBudget = 2, kInput = 3 };

int exit_for(Verdict v) {
    switch (v) {
        case Verdict::Unifiable: return kOk;
        case Verdict::NotUnifiable: return kFailed;
        case Verdict::BudgetExceeded: return kBudget;
    }
    return kInput;
}

struct SolveArgs {
    std::string alg = "slp";
    std::uint64_t budget = DecideOptions{}.budget;
    bool stats = false;
    bool trace = false;
    bool require_hom = false;
    std::string file;
    std::string output;  // solved form only, readable by verify
};

int solve(const SolveArgs& args) {
    const StandardSystem s = read_problem_file(args.file);
    const DecideOptions opts{args.budget, args.trace};
    DecisionResult r;
    if (args.alg == "asym") {
        r = asym_unify(s, opts);
    } else {
        if (s.is_asymmetric()) {
            std::cerr << "error: --alg " << args.alg << " needs a symmetric problem; use --alg asym\n";
            return kInput;
        }
        if (args.alg == "ta") {
            r = ta_unify(s, opts);
        } else if (args.alg == "slp") {
            r = decide(s, opts);
        } else {
            std::string why;
            if (auto typed = typecheck(s, &why)) {
                r = decide_hom(*typed, opts);
            } else if (args.require_hom) {
                std::cerr << "error: outside the single-homomorphism fragment: " << why << '\n';
                return kInput;
            } else {
                std::cerr << "note: outside the single-homomorphism fragment (" << why
                          << "); using the compressed decider\n";
                r = decide(s, opts);
            }
        }
    }

    std::cout << "decision: " << to_string(r.verdict) << '\n';
    if (r.reason != FailureReason::None) std::cout << "reason: " << to_string(r.reason) << '\n';
    if (!r.detail.empty()) std::cout << "detail: " << r.detail << '\n';
    if (args.stats) r.stats.write(std::cout);
    if (args.trace) {
        for (const auto& line : r.trace) std::cout << "trace: " << line << '\n';
    }
    if (r.solved) {
        write_solved_form(std::cout, *r.solved);
        if (!args.output.empty()) {
            std::ofstream out(args.output);
            write_solved_form(out, *r.solved);
            if (!out) {
                std::cerr << "error: cannot write " << args.output << '\n';
                return kInput;
            }
        }
    }
    return exit_for(r.verdict);
}

struct GenArgs {
    std::string family;
    unsigned n = 0;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> variables;
    std::optional<unsigned> equations;
    std::optional<unsigned> labels;
    bool acyclic = false;
    std::string output;
};

int gen(const GenArgs& args) {
    StandardSystem s;
    if (args.family == "random") {
        RandomSpec spec = corpus_spec(args.n);
        if (args.seed) spec.seed = *args.seed;
        if (args.variables) spec.variables = *args.variables;
        if (args.equations) spec.equations = *args.equations;
        if (args.labels) spec.labels = *args.labels;
        spec.lhs_pool = std::min(spec.lhs_pool, spec.variables);
        spec.acyclic = spec.acyclic || args.acyclic;
        s = generate_random(spec);
    } else {
        s = make_instance(*parse_family(args.family), args.n);
    }
    if (args.output.empty()) {
        write_problem(std::cout, s);
    } else {
        std::ofstream out(args.output);
        if (!out) {
            std::cerr << "error: cannot write " << args.output << '\n';
            return kInput;
        }
        write_problem(out, s);
    }
    return kOk;
}

struct BenchArgs {
    std::vector<std::string> families;
    std::vector<std::string> algorithms;
    std::uint64_t min_n = 0;
    std::uint64_t max_n = 0;
    std::uint64_t budget = DecideOptions{}.budget;
    bool serial = false;
    bool no_oracle = false;
    std::string csv;
};

int bench(const BenchArgs& args) {
    BenchConfig config;
    for (const auto& f : args.families) config.families.push_back(*parse_family(f));
    for (const auto& a : args.algorithms) config.algorithms.push_back(*parse_algorithm(a));
    config.min_n = args.min_n;
    config.max_n = args.max_n;
    config.budget = args.budget;
    config.parallel = !args.serial;
    config.oracle = !args.no_oracle;
    const BenchReport report = run_bench(config);
    if (args.csv.empty()) {
        write_csv(std::cout, report);
    } else {
        std::ofstream out(args.csv);
        if (!out) {
            std::cerr << "error: cannot write " << args.csv << '\n';
            return kInput;
        }
        write_csv(out, report);
    }
    write_summary(std::cerr, report);
    for (const auto& row : report.rows) {
        if (row.agrees && !*row.agrees) return kFailed;
    }
    return kOk;
}

struct VerifyArgs {
    std::string problem;
    std::string subst;
    std::uint64_t cap = kDefaultMaterializationCap;
};

int verify(const VerifyArgs& args) {
    const StandardSystem s = read_problem_file(args.problem);
    std::ifstream in(args.subst);
    if (!in) {
        std::cerr << "error: cannot open " << args.subst << '\n';
        return kInput;
    }
    const SolvedForm f = parse_substitution(in, s.vars);
    if (!is_dag_solved(f)) {
        std::cerr << "error: substitution is not in dag-solved form\n";
        return kInput;
    }
    // A dag-solved form denotes its back-substitution taken to normal form.
    Substitution sigma;
    try {
        sigma = materialize(f, args.cap).normalized(args.cap);
    } catch (const MaterializationError& e) {
        std::cout << "not-materializable: " << e.what() << '\n';
        return kBudget;
    }
    const VerifyReport report = verify_unifier(s, sigma, args.cap);
    for (std::size_t i = 0; i < s.equations.size(); ++i) {
        std::cout << to_string(report.verdicts[i]) << ": " << to_string(s.equations[i], s.vars) << '\n';
    }
    if (report.ok()) return kOk;
    return report.not_materializable() ? kBudget : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unification modulo one-sided distributivity"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    auto* solve_cmd = app.add_subcommand("solve", "Decide a problem file");
    solve_cmd->add_option("--alg", solve_args.alg, "ta, hom, slp or asym")
        ->check(CLI::IsMember({"ta", "hom", "slp", "asym"}))
        ->capture_default_str();
    solve_cmd->add_option("--budget", solve_args.budget, "Maximum rule applications")->capture_default_str();
    solve_cmd->add_flag("--stats", solve_args.stats, "Print rule counts and size measures");
    solve_cmd->add_flag("--trace", solve_args.trace, "Print every rule application");
    solve_cmd->add_flag("--require-hom", solve_args.require_hom, "Reject untyped input instead of falling back");
    solve_cmd->add_option("-o,--output", solve_args.output, "Also write the solved form here, for verify");
    solve_cmd->add_option("FILE", solve_args.file)->required()->check(CLI::ExistingFile);

    GenArgs gen_args;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a problem");
    gen_cmd->add_option("--family", gen_args.family)->required()->check(CLI::IsMember({"sigma", "sigma-prime", "random"}));
    gen_cmd->add_option("--n", gen_args.n, "Family parameter, or corpus index for random")->required();
    gen_cmd->add_option("--seed", gen_args.seed);
    gen_cmd->add_option("--vars", gen_args.variables);
    gen_cmd->add_option("--eqs", gen_args.equations);
    gen_cmd->add_option("--labels", gen_args.labels);
    gen_cmd->add_flag("--acyclic", gen_args.acyclic);
    gen_cmd->add_option("-o,--output", gen_args.output);

    BenchArgs bench_args;
    auto* bench_cmd = app.add_subcommand("bench", "Run families against algorithms and report growth");
    bench_cmd->add_option("--family", bench_args.families)->required()->check(CLI::IsMember({"sigma", "sigma-prime", "random"}));
    bench_cmd->add_option("--alg", bench_args.algorithms)->required()->check(CLI::IsMember({"ta", "hom", "slp", "asym"}));
    bench_cmd->add_option("--min-n", bench_args.min_n)->capture_default_str();
    bench_cmd->add_option("--max-n", bench_args.max_n)->required();
    bench_cmd->add_option("--budget", bench_args.budget)->capture_default_str();
    bench_cmd->add_flag("--serial", bench_args.serial, "Run instances on one thread");
    bench_cmd->add_flag("--no-oracle", bench_args.no_oracle, "Skip the baseline cross-check");
    bench_cmd->add_option("--csv", bench_args.csv, "Write rows here instead of stdout");

    VerifyArgs verify_args;
    auto* verify_cmd = app.add_subcommand("verify", "Check a substitution against a problem");
    verify_cmd->add_option("PROBLEM", verify_args.problem)->required()->check(CLI::ExistingFile);
    verify_cmd->add_option("SUBST", verify_args.subst)->required()->check(CLI::ExistingFile);
    verify_cmd->add_option("--cap", verify_args.cap, "Materialization size cap")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kInput;
    }

    try {
        if (*solve_cmd) return solve(solve_args);
        if (*gen_cmd) return gen(gen_args);
        if (*bench_cmd) return bench(bench_args);
        return verify(verify_args);
    } catch (const ParseError& e) {
        std::cerr << (e.signature() ? "signature error: " : "parse error: ") << e.what() << '\n';
    } catch (const SignatureError& e) {
        std::cerr << "error: " << e.what() << '\n';
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
    }
    return kInput;
}
