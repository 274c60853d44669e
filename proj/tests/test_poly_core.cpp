#include <gtest/gtest.h>

#include "support.hpp"

using namespace qt;

TEST(Field, PrimeReductionAndInverse) {
    Field f = Field::prime(5);
    EXPECT_EQ(f.normalize(Scalar(7)), Scalar(2));
    EXPECT_EQ(f.normalize(Scalar(-1)), Scalar(4));
    EXPECT_EQ(f.normalize(Scalar(1, 2)), Scalar(3));
    EXPECT_EQ(f.mul(f.inv(Scalar(3)), Scalar(3)), Scalar(1));
    EXPECT_THROW(Field::prime(4), Error);
    EXPECT_THROW(f.inv(Scalar(0)), Error);
}

TEST(Polynomial, ArithmeticIsExact) {
    auto r = Q({"x", "y"});
    Polynomial f = P(r, "1/3*x + y");
    Polynomial g = P(r, "3*x - 1/2");
    EXPECT_EQ(f * g, P(r, "x^2 + 3*x*y - 1/6*x - 1/2*y"));
    EXPECT_TRUE((f - f).is_zero());
    EXPECT_TRUE((f - f).terms().empty());
    Polynomial h = f * g;
    for (const auto& [e, c] : h.terms()) EXPECT_EQ(e.size(), 2u);
}

TEST(Polynomial, CharacteristicTwoDropsEvenCoefficients) {
    auto r = Fp(2, {"x", "y"});
    EXPECT_EQ(P(r, "(x+y)^2"), P(r, "x^2+y^2"));
    EXPECT_TRUE(P(r, "2*x").is_zero());
}

TEST(Polynomial, ParserGrammar) {
    auto r = Q({"x", "y", "z"});
    EXPECT_EQ(P(r, "(x^2 + y^2*z)"), P(r, "x^2+y^2*z"));
    EXPECT_EQ(P(r, "-(x - 3/4)"), P(r, "3/4 - x"));
    EXPECT_EQ(P(r, "(x+1)^3").str(), "x^3+3*x^2+3*x+1");
    EXPECT_THROW(P(r, "w + 1"), Error);
    EXPECT_THROW(P(r, "x +"), Error);
    EXPECT_THROW(P(r, "x^y"), Error);
    EXPECT_THROW(P(r, "1/0"), Error);
}

TEST(Polynomial, PrintParseRoundTrip) {
    auto r = Q({"x", "y", "z"});
    for (const char* s : {"x^2-y^2*z", "1/2*x*y - 7/3", "(x+y+z)^4", "-z"}) {
        Polynomial f = P(r, s);
        EXPECT_EQ(P(r, f.str()), f) << s;
    }
}

TEST(HasseDerivative, CharTwoSurvivingDerivative) {
    auto r = Fp(2, {"x", "y", "z"});
    Polynomial f = P(r, "x^2+y^2*z");
    std::vector<unsigned> dz{0, 0, 1}, dx{1, 0, 0};
    EXPECT_EQ(hasse_derivative(f, dz), P(r, "y^2"));
    EXPECT_TRUE(hasse_derivative(f, dx).is_zero());
}

TEST(HasseDerivative, BinomialCoefficient) {
    auto r = Q({"x"});
    std::vector<unsigned> a{2};
    EXPECT_EQ(hasse_derivative(P(r, "x^3"), a), P(r, "3*x"));
}

TEST(HasseDerivative, MatchesTaylorExpansion) {
    auto r = Q({"x", "y"});
    auto r2 = Fp(3, {"x", "y"});
    for (const auto& f : {P(r, "x^3*y^2 - 2*x*y + 5"), P(r, "(x+y)^4"), P(r2, "x^3+x*y^2+y^5")})
        for (unsigned i = 0; i <= 3; ++i)
            for (unsigned j = 0; j <= 3; ++j) {
                std::vector<unsigned> a{i, j};
                EXPECT_EQ(hasse_derivative(f, a), hasse_oracle(f, a)) << f.str() << " " << i << "," << j;
            }
}

TEST(OrderAtPoint, Examples) {
    auto r = Q({"x", "y"});
    EXPECT_EQ(order_at_point(P(r, "x^2+y^3"), pt({0, 0})), Extended<unsigned>(2u));
    EXPECT_TRUE(order_at_point(Polynomial(r), pt({0, 0})).is_infinite());
    auto r5 = Fp(5, {"x"});
    EXPECT_EQ(order_at_point(P(r5, "x^5"), pt({3})), Extended<unsigned>(0u));
}

TEST(OrderAtPoint, MatchesTaylorShift) {
    auto r = Q({"x", "y"});
    Polynomial f = P(r, "(x-1)^2*(y+2)^3 + (x-1)^4");
    for (const auto& p : grid_points(*r)) EXPECT_EQ(order_at_point(f, p), taylor_order(f, p));
    EXPECT_EQ(order_at_point(f, pt({1, -2})), Extended<unsigned>(4u));
}

TEST(DivisorValuation, Examples) {
    auto r = Q({"x", "y", "z"});
    EXPECT_EQ(divisor_valuation(P(r, "x^2*z^2+y^2*z^3"), 2), Extended<unsigned>(2u));
    EXPECT_EQ(divisor_valuation(P(r, "x^2+y"), 1), Extended<unsigned>(0u));
    EXPECT_EQ(divisor_valuation(P(r, "y^2*z^2"), 1), Extended<unsigned>(2u));
    EXPECT_TRUE(divisor_valuation(Polynomial(r), 0).is_infinite());
}

TEST(DivisorValuation, MatchesDerivativeOracle) {
    auto r = Q({"x", "y", "z"});
    for (const char* s : {"x^2*z^2+y^2*z^3", "x*y*z", "(x+z)^3*z", "y^4 + x^2*y"})
        for (std::size_t v = 0; v < 3; ++v) EXPECT_EQ(divisor_valuation(P(r, s), v), valuation_oracle(P(r, s), v)) << s;
}
