#pragma once

#include <cstdint>
#include <string>

#include "osd/system.hpp"

namespace osd {

/// The symmetric exponential family over the single label T, with
/// subscript-word names (`X_112` is X with subscript 1·1·2). Duplicate
/// instances of the schemas are emitted once, giving 3n + 5 equations.
StandardSystem generate_sigma(unsigned n);

/// σ(n) with every equation oriented `term =d variable`.
StandardSystem generate_sigma_prime(unsigned n);

struct RandomSpec {
    std::uint64_t seed = 0;
    unsigned variables = 8;
    unsigned equations = 10;
    unsigned labels = 2;        // trailing variables used only as left product factors
    unsigned lhs_pool = 4;      // left-hand sides drawn from the first lhs_pool variables
    double product_share = 0.45;
    double variable_share = 0.1;
    bool acyclic = false;       // when set, every rhs variable is younger than its lhs
};

/// Deterministic under the spec; always in standard form and symmetric.
StandardSystem generate_random(const RandomSpec& spec);

/// Parameters of the i-th member of the seeded random corpus.
RandomSpec corpus_spec(std::uint64_t index);

}  // namespace osd
