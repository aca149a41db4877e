#include "tritrop/rational.hpp"

#include <gtest/gtest.h>

#include <random>

using tritrop::Rational;

TEST(Rational, NormalizesSignAndGcd) {
    const Rational r(6, -8);
    EXPECT_EQ(r.num(), -3);
    EXPECT_EQ(r.den(), 4);
    EXPECT_EQ(Rational(0, -5).den(), 1);
}

TEST(Rational, ParseAndPrint) {
    EXPECT_EQ(Rational::parse("-3/1"), Rational(-3));
    EXPECT_EQ(Rational::parse("10/4").str(), "5/2");
    EXPECT_EQ(Rational::parse("7"), Rational(7));
    EXPECT_THROW(Rational::parse("3/0"), std::invalid_argument);
    EXPECT_THROW(Rational::parse("x/2"), std::invalid_argument);
    EXPECT_THROW(Rational::parse(""), std::invalid_argument);
}

TEST(Rational, OrderingMatchesDoubles) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> n(-50, 50);
    std::uniform_int_distribution<int> d(1, 40);
    for (int i = 0; i < 500; ++i) {
        const Rational a(n(rng), d(rng));
        const Rational b(n(rng), d(rng));
        EXPECT_EQ(a < b, a.to_double() < b.to_double() && !(a == b));
        EXPECT_EQ((a + b) - b, a);
        if (!b.is_zero()) {
            EXPECT_EQ((a / b) * b, a);
        }
        EXPECT_EQ(Rational::parse(a.str()), a);
    }
}

TEST(Rational, OverflowThrows) {
    const Rational big(INT64_MAX / 2);
    EXPECT_THROW(big * big, std::overflow_error);
    EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
}

TEST(Rational, FloorRoundsDown) {
    EXPECT_EQ(Rational(-1, 2).floor(), -1);
    EXPECT_EQ(Rational(7, 2).floor(), 3);
    EXPECT_EQ(Rational(-4).floor(), -4);
}

TEST(DualRational, LexicographicOrder) {
    using tritrop::DualRational;
    EXPECT_LT((DualRational{Rational(0), Rational(-1)}), (DualRational{Rational(0), Rational(0)}));
    EXPECT_GT((DualRational{Rational(1), Rational(-100)}), (DualRational{Rational(0), Rational(100)}));
    EXPECT_EQ((DualRational{Rational(0), Rational(2)}).sign(), 1);
}
