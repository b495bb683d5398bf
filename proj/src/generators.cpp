#include "osd/generators.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <tuple>

namespace osd {

namespace {

std::string word(char base, char digit, unsigned reps, const std::string& tail = "") {
    if (reps == 0 && tail.empty()) return std::string(1, base);
    return std::string(1, base) + "_" + std::string(reps, digit) + tail;
}

StandardSystem sigma_family(unsigned n, Orientation orient) {
    StandardSystem s;
    const VarId t = s.vars.intern("T");
    std::set<std::tuple<std::string, char, std::string, std::string>> seen;
    auto emit = [&](const std::string& lhs, char op, const std::string& a, const std::string& b) {
        if (!seen.emplace(lhs, op, a, b).second) return;
        const VarId l = s.vars.intern(lhs);
        const VarId x = a == "T" ? t : s.vars.intern(a);
        const VarId y = s.vars.intern(b);
        if (op == '+') {
            s.add_sum(l, x, y, orient);
        } else {
            s.add_product(l, x, y, orient);
        }
    };
    for (unsigned i = 0; i <= n; ++i) {
        emit(word('X', '1', i), '+', word('X', '1', i + 1), word('X', '1', i, "2"));
        emit(word('Y', '2', i), '+', word('Y', '2', i, "1"), word('Y', '2', i + 1));
        emit(word('Y', '2', i, "1"), '*', "T", word('X', '1', i, "2"));
        emit("X", '*', "T", "Y");
        emit(word('X', '1', i + 1), '+', word('X', '1', i + 2), word('X', '1', i + 1, "2"));
    }
    return s;
}

}  // namespace

StandardSystem generate_sigma(unsigned n) { return sigma_family(n, Orientation::Symmetric); }

StandardSystem generate_sigma_prime(unsigned n) { return sigma_family(n, Orientation::Up); }

StandardSystem generate_random(const RandomSpec& spec) {
    std::mt19937_64 rng(spec.seed);
    StandardSystem s;
    const unsigned nvars = std::max(3U, spec.variables);
    std::vector<VarId> vars;
    for (unsigned i = 0; i < nvars; ++i) vars.push_back(s.vars.intern("V" + std::to_string(i)));
    // The last `labels` variables occur only as left product factors; the
    // others form the pool for every other position.
    const unsigned labels = std::clamp(spec.labels, 1U, nvars - 2);
    const unsigned plain = nvars - labels;
    const unsigned pool = std::clamp(spec.lhs_pool, 1U, plain - 1);

    auto pick = [&](unsigned lo, unsigned hi) {  // inclusive bounds
        return std::uniform_int_distribution<unsigned>(lo, hi)(rng);
    };
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    for (unsigned k = 0; k < spec.equations; ++k) {
        const unsigned lhs = pick(0, pool - 1);
        const unsigned lo = spec.acyclic ? lhs + 1 : 0;
        auto operand = [&] {
            unsigned v = pick(lo, plain - 1);
            return v == lhs ? (v + 1) % plain : v;
        };
        const double roll = coin(rng);
        if (roll < spec.variable_share) {
            s.add_var(vars[lhs], vars[operand()]);
        } else if (roll < spec.variable_share + spec.product_share) {
            s.add_product(vars[lhs], vars[plain + pick(0, labels - 1)], vars[operand()]);
        } else {
            const unsigned a = operand();
            unsigned b = operand();
            if (b == a && plain - lo > 2) b = operand();  // one redraw keeps repeated summands possible but rare
            s.add_sum(vars[lhs], vars[a], vars[b]);
        }
    }
    return s;
}

RandomSpec corpus_spec(std::uint64_t index) {
    std::mt19937_64 rng(0x5eed0000ULL + index);
    RandomSpec spec;
    spec.seed = rng();
    spec.variables = std::uniform_int_distribution<unsigned>(5, 8)(rng);
    spec.equations = std::uniform_int_distribution<unsigned>(2, 10)(rng);
    spec.labels = std::uniform_int_distribution<unsigned>(1, 3)(rng) == 3 ? 2 : 1;
    spec.lhs_pool = std::uniform_int_distribution<unsigned>(2, 5)(rng);
    spec.product_share = std::uniform_real_distribution<double>(0.3, 0.7)(rng);
    spec.acyclic = (index % 3) != 0;
    return spec;
}

}  // namespace osd
