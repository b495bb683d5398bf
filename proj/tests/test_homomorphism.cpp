#include <gtest/gtest.h>

#include "osd/compressed.hpp"
#include "osd/generators.hpp"
#include "osd/homomorphism.hpp"
#include "support.hpp"

namespace osd {
namespace {

using testing::problem;
using testing::unifies;

TEST(Typecheck, AcceptsSigma) {
    for (unsigned n = 0; n <= 10; ++n) {
        const auto typed = typecheck(generate_sigma(n));
        ASSERT_TRUE(typed) << n;
        EXPECT_EQ(typed->system.vars.name(typed->t), "T");
    }
}

TEST(Typecheck, RejectsOutsideTheFragment) {
    std::string why;
    EXPECT_FALSE(typecheck(problem("X = A * Y\nX = B * Z\n"), &why));
    EXPECT_NE(why.find("2 left product factors"), std::string::npos);
    EXPECT_FALSE(typecheck(problem("X = T * Y\nT = A + B\n"), &why));
    EXPECT_NE(why.find("ordinary"), std::string::npos);
    EXPECT_FALSE(typecheck(problem("X = T * T\n")));
    EXPECT_FALSE(typecheck(problem("X = Y + Z\n")));
    EXPECT_FALSE(typecheck(problem("X =d T * Y\n")));
}

TEST(Power, ProducesTheRequestedRepetition) {
    VarTable vars;
    const VarId t = vars.intern("T");
    for (unsigned count = 1; count <= 300; ++count) {
        SlpStore store;
        const SlpId id = power(store, t, BigNat(count));
        ASSERT_EQ(store.length(id), BigNat(count));
        ASSERT_EQ(store.expand(id), std::vector<VarId>(count, t));
        const std::size_t bits = msb(BigNat(count)) + 1;
        ASSERT_LE(store.size(id), 2 * bits);
    }
    SlpStore store;
    const BigNat huge = (BigNat(1) << 500) + 12345;
    const SlpId id = power(store, t, huge);
    EXPECT_EQ(store.length(id), huge);
    EXPECT_LE(store.size(id), 2 * 501u);
    EXPECT_THROW(power(store, t, BigNat(0)), std::out_of_range);
}

TEST(Hom, SigmaMatchesTheCompressedDecider) {
    for (unsigned n = 0; n <= 10; ++n) {
        const auto s = generate_sigma(n);
        const auto h = decide_hom(*typecheck(s));
        const auto c = decide(s);
        ASSERT_EQ(h.verdict, Verdict::Unifiable) << n;
        EXPECT_EQ(h.verdict, c.verdict);
        EXPECT_EQ(h.stats.max_label_length, c.stats.max_label_length) << n;
        EXPECT_EQ(h.stats.fragment, "single-homomorphism");
        if (n <= 3) EXPECT_TRUE(unifies(s, h)) << n;
    }
}

TEST(Hom, FailureReasons) {
    const auto prop = decide_hom(*typecheck(problem("X = X1 + X2\nX = V * X2\n")));
    EXPECT_EQ(prop.reason, FailureReason::PropagationCycle);
    const auto dep = decide_hom(*typecheck(problem("X = T * X\n")));
    EXPECT_EQ(dep.reason, FailureReason::DependencyCycle);
}

TEST(Hom, ExponentsSubtractAlongBranchingPaths) {
    const auto s = problem("X = A + B\nX = T * Y\nY = T * Z\nZ = C + D\nA = T * E\n");
    const auto h = decide_hom(*typecheck(s));
    ASSERT_EQ(h.verdict, Verdict::Unifiable);
    EXPECT_GE(h.stats.rule("iv"), 1u);
    EXPECT_TRUE(unifies(s, h));
}

TEST(Hom, AgreesOnTypedCorpusInstances) {
    std::size_t typed_count = 0;
    for (std::uint64_t i = 0; i < 500; ++i) {
        const auto s = generate_random(corpus_spec(i));
        const auto typed = typecheck(s);
        if (!typed) continue;
        ++typed_count;
        const auto h = decide_hom(*typed);
        ASSERT_EQ(h.verdict, decide(s).verdict) << i;
        if (h.unifiable()) EXPECT_TRUE(unifies(s, h)) << i;
    }
    EXPECT_GT(typed_count, 250u);
}

TEST(Hom, AgreesOnWiderTypedSystems) {
    std::size_t typed_count = 0;
    for (std::uint64_t seed = 0; seed < 3000; ++seed) {
        RandomSpec spec;
        spec.seed = seed;
        spec.labels = 1;
        spec.variables = 5 + static_cast<unsigned>(seed % 8);
        spec.equations = 3 + static_cast<unsigned>(seed % 12);
        spec.lhs_pool = 2 + static_cast<unsigned>(seed % 5);
        spec.acyclic = seed % 4 != 0;
        const auto s = generate_random(spec);
        const auto typed = typecheck(s);  // fails only when no product was drawn
        if (!typed) {
            ASSERT_TRUE(s.label_variables().empty()) << seed;
            continue;
        }
        ++typed_count;
        const auto h = decide_hom(*typed);
        ASSERT_EQ(h.verdict, decide(s).verdict) << "seed " << seed;
        if (h.unifiable()) EXPECT_TRUE(unifies(s, h)) << "seed " << seed;
    }
    EXPECT_GT(typed_count, 2500u);
}

}  // namespace
}  // namespace osd
