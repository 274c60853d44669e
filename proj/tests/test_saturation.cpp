#include <gtest/gtest.h>

#include "support.hpp"

using namespace qt;

namespace {

bool has_gen(const QReesAlgebra& J, const Polynomial& f, const Weight& w) {
    for (const auto& g : J.generators())
        if (g.weight == w && (g.poly == f || g.poly == -f)) return true;
    return false;
}

}  // namespace

TEST(Diff, CharTwoExample) {
    auto f2 = Fp(2, {"x", "y", "z"});
    auto D = diff_saturate(A(f2, {{"x^2+y^2*z", "2"}}));
    EXPECT_EQ(D.size(), 2u);
    EXPECT_TRUE(has_gen(D, P(f2, "x^2+y^2*z"), W("2")));
    EXPECT_TRUE(has_gen(D, P(f2, "y^2"), W("1")));
}

TEST(Diff, CuspAndLinear) {
    auto r = Q({"x", "y"});
    auto D = diff_saturate(A(r, {{"x^2+y^3", "2"}}));
    EXPECT_EQ(D.size(), 3u);
    EXPECT_TRUE(has_gen(D, P(r, "2*x"), W("1")));
    EXPECT_TRUE(has_gen(D, P(r, "3*y^2"), W("1")));
    auto L = diff_saturate(A(r, {{"x", "1"}}));
    ASSERT_EQ(L.size(), 1u);
    EXPECT_EQ(L.generators()[0].poly, P(r, "x"));
}

TEST(Diff, FractionalWeightsUseEveryOrderBelowTheWeight) {
    auto r = Q({"x"});
    auto D = diff_saturate(A(r, {{"x^3", "5/2"}}));
    EXPECT_TRUE(has_gen(D, P(r, "3*x^2"), W("3/2")));
    EXPECT_TRUE(has_gen(D, P(r, "3*x"), W("1/2")));
    EXPECT_EQ(D.size(), 3u);
}

TEST(Nu, Examples) {
    auto r = Q({"x"});
    auto J = A(r, {{"x^2", "1"}});
    auto a = nu(J, P(r, "x^2"), W("10"));
    EXPECT_EQ(a.kind, NuValue::Kind::Finite);
    EXPECT_EQ(a.value, W("1"));
    EXPECT_EQ(nu(J, P(r, "x^4"), W("10")).value, W("2"));
    EXPECT_EQ(nu(J, Polynomial(r), W("10")).kind, NuValue::Kind::Infinite);
    EXPECT_EQ(nu(J, P(r, "x^40"), W("10")).kind, NuValue::Kind::CapReached);
}

TEST(NuBar, Examples) {
    auto r = Q({"x", "y"});
    EXPECT_EQ(nu_bar_estimate(A(r, {{"x^2", "1"}}), P(r, "x"), 4, W("10")), Extended<Weight>(W("1/2")));
    EXPECT_EQ(nu_bar_estimate(A(r, {{"x", "1"}}), P(r, "x"), 1, W("10")), Extended<Weight>(W("1")));
    for (unsigned n : {1u, 3u})
        EXPECT_EQ(nu_bar_estimate(A(r, {{"x", "1"}}), P(r, "y"), n, W("10")), Extended<Weight>(Weight(0)));
}

TEST(NuBar, AgreesWithLevelEnumeration) {
    // Integral weights, so ν(f^n) is the largest integer m with f^n ∈ J_m.
    auto r = Q({"x", "y"});
    auto J = A(r, {{"x^3", "2"}, {"y^2", "1"}});
    for (const char* s : {"x", "y", "x*y", "x^2+y"}) {
        Polynomial f = P(r, s);
        Weight best(0);
        for (unsigned n = 1; n <= 4; ++n)
            for (long m = 1; m <= 10L * n; ++m)
                if (level_oracle(J, Weight(m)).contains(f.pow(n))) best = std::max(best, Weight(m) / Weight(static_cast<long>(n)));
        EXPECT_EQ(nu_bar_estimate(J, f, 4, W("10")), Extended<Weight>(best)) << s;
    }
}

TEST(Membership, Examples) {
    auto r = Q({"x", "y"});
    auto cusp = A(r, {{"x^2+y^3", "2"}});
    auto v = is_integral_member(cusp, P(r, "x^2+y^3"), W("1"), 4, W("8"));
    EXPECT_TRUE(is_member(v));
    auto w = is_integral_member(A(r, {{"x^2", "1"}}), P(r, "x"), W("1/2"), 4, W("8"));
    EXPECT_EQ(w.status, MembershipVerdict::Status::MemberWitness);
    EXPECT_EQ(w.n, 2u);
    EXPECT_EQ(w.a, W("1/2"));
    for (unsigned n : {1u, 4u})
        EXPECT_EQ(is_integral_member(A(r, {{"x", "1"}}), P(r, "y"), W("1"), n, W("8")).status,
                  MembershipVerdict::Status::NonMemberAtCap);
}

TEST(Equivalence, Examples) {
    auto r = Q({"x", "y"});
    EXPECT_EQ(equivalence_check(A(r, {{"x^2+y^3", "2"}}), A(r, {{"x^2+y^3", "2"}, {"x^2+y^3", "1"}}), 4, W("8")),
              Equivalence::Equivalent);
    EXPECT_EQ(equivalence_check(A(r, {{"x", "1"}}), A(r, {{"y", "1"}}), 4, W("8")), Equivalence::Inequivalent);
    EXPECT_EQ(equivalence_check(A(r, {{"x", "1"}}), A(r, {{"x^2", "2"}}), 4, W("8")), Equivalence::Equivalent);
}
