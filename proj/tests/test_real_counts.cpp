#include "tritrop/real_counts.hpp"

#include <gtest/gtest.h>

using namespace tritrop;

namespace {

/// Counts quadratic refinements of the standard symplectic form on F2^{2g}
/// with Arf invariant 1 and 0, by brute force over the 2^{2g} forms.
ThetaCounts quadratic_forms(int g) {
    const int n = 2 * g;
    ThetaCounts c;
    for (std::uint32_t values = 0; values < (1U << n); ++values) {
        // q(e_i) given by the bits of `values`; Arf = Σ q(a_i) q(b_i)
        int arf = 0;
        for (int i = 0; i < g; ++i) arf ^= static_cast<int>((values >> (2 * i)) & (values >> (2 * i + 1)) & 1U);
        (arf == 1 ? c.odd : c.even) += 1;
    }
    return c;
}

/// Odd count by direct evaluation: q is odd when it takes the value 1 on
/// more than half of F2^{2g}.
std::int64_t odd_by_majority(int g) {
    const int n = 2 * g;
    std::int64_t odd = 0;
    for (std::uint32_t values = 0; values < (1U << n); ++values) {
        int ones = 0;
        for (std::uint32_t x = 0; x < (1U << n); ++x) {
            // q(x) = Σ x_i q(e_i) + Σ_{pairs} x_{a_i} x_{b_i}
            int q = __builtin_popcount(x & values) & 1;
            for (int i = 0; i < g; ++i) q ^= static_cast<int>((x >> (2 * i)) & (x >> (2 * i + 1)) & 1U);
            ones += q;
        }
        if (2 * ones > (1 << n)) ++odd;
    }
    return odd;
}

} // namespace

TEST(OddEven, MatchesQuadraticFormOracle) {
    for (int g = 1; g <= 5; ++g) {
        const auto want = quadratic_forms(g);
        const auto got = odd_even_counts(g);
        EXPECT_EQ(got.odd, want.odd) << "g = " << g;
        EXPECT_EQ(got.even, want.even) << "g = " << g;
    }
    for (int g = 1; g <= 4; ++g) EXPECT_EQ(odd_even_counts(g).odd, odd_by_majority(g));
}

TEST(OddEven, GenusFour) {
    const auto c = odd_even_counts(4);
    EXPECT_EQ(c.odd, 120);
    EXPECT_EQ(c.even, 136);
}

TEST(OddEven, GenusZeroAndNegative) {
    EXPECT_EQ(odd_even_counts(0).odd, 0);
    EXPECT_EQ(odd_even_counts(0).even, 1);
    EXPECT_THROW(odd_even_counts(-1), DomainError);
}

TEST(RealThetaCounts, MCurveOfGenusFourHas120RealOdd) {
    const auto r = real_theta_counts({4, 5, true});
    EXPECT_EQ(r.real_odd, 120);
    EXPECT_EQ(r.real_even, 136);
}

TEST(RealThetaCounts, InvariantsOverAllTypes) {
    for (int g = 1; g <= 8; ++g) {
        for (int s = 1; s <= g + 1; ++s) {
            for (const bool sep : {false, true}) {
                const RealTopologyType t{g, s, sep};
                if ((sep && (s - g - 1) % 2 != 0) || (!sep && s == g + 1)) {
                    EXPECT_THROW(real_theta_counts(t), DomainError);
                    continue;
                }
                const auto r = real_theta_counts(t);
                // the real points of the torsor of theta characteristics
                EXPECT_EQ(r.real_odd + r.real_even, std::int64_t{1} << (g + s - 1));
                EXPECT_LE(r.real_odd, odd_even_counts(g).odd);
                if (s == g + 1) {
                    EXPECT_EQ(r.real_odd, odd_even_counts(g).odd);
                }
            }
        }
    }
}

TEST(RealThetaCounts, NonSeparatingIsBalanced) {
    const auto r = real_theta_counts({4, 2, false});
    EXPECT_EQ(r.real_odd, 16);
    EXPECT_EQ(r.real_even, 16);
    EXPECT_EQ(real_theta_counts({4, 1, false}).real_odd, 8);
}

TEST(RealThetaCounts, ValidationNamesTheConstraint) {
    const auto message = [](RealTopologyType t) {
        try {
            real_theta_counts(t);
        } catch (const DomainError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    EXPECT_NE(message({4, 6, true}).find("Harnack"), std::string::npos);
    EXPECT_NE(message({4, 4, true}).find("parity"), std::string::npos);
    EXPECT_NE(message({4, 5, false}).find("M-curve"), std::string::npos);
    EXPECT_NE(message({4, 0, false}).find("oval"), std::string::npos);
    EXPECT_NE(message({-1, 1, false}).find("genus"), std::string::npos);
}

TEST(LiftingMultiplicity, IsTwoToTheGMinusOne) {
    EXPECT_EQ(lifting_multiplicity(4), 8);
    EXPECT_EQ(lifting_multiplicity(4) * 15, 120);
    for (int g = 1; g <= 10; ++g) EXPECT_EQ(lifting_multiplicity(g), std::int64_t{1} << (g - 1));
    EXPECT_THROW(lifting_multiplicity(0), DomainError);
}

TEST(EmchCensus, RowsSumTo108) {
    const auto c = emch_census();
    ASSERT_EQ(c.rows.size(), 4U);
    int sum = 0;
    for (const auto& r : c.rows) sum += r.count;
    EXPECT_EQ(sum, 108);
    EXPECT_EQ(c.total, 108);
    EXPECT_EQ(c.rows[0].count, 80);
    EXPECT_EQ(c.rows[1].count, 6);
    EXPECT_EQ(c.rows[2].count, 18);
    EXPECT_EQ(c.rows[3].count, 4);
    // 120 real odd characteristics, 12 of them not totally real
    EXPECT_EQ(real_theta_counts({4, 5, true}).real_odd - c.total, 12);
}
