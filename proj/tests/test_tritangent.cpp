#include "curves.hpp"
#include "oracles.hpp"
#include "tritrop/tritangent.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace tritrop;

namespace {

const Point2 kOracleDirection{Rational(2, 3), Rational(1)};

/// Even stable weights summing to six at the contact points, from the
/// brute-force extrapolation oracle.
void expect_tritangent_by_oracle(const PlaneCurve& c, const OneOneCurve& l) {
    const auto m = oracles::stable_by_extrapolation(c, one_one_curve(l), kOracleDirection, Rational(1, 100000));
    int total = 0;
    for (const auto& [p, k] : m) total += k;
    EXPECT_EQ(total, 6);
}

} // namespace

TEST(OneOneCurve, HasBidegreeOneOne) {
    const auto l = one_one_curve({Rational(-1), Rational(-2), Rational(-4)});
    EXPECT_EQ(degree_profile(l), (DegreeProfile{true, 1, 1}));
}

TEST(Enumerate, RejectsWrongProfile) {
    EXPECT_THROW(enumerate_tritangents(curve_from_polynomial(fixtures::cubic_f())), DomainError);
}

TEST(Enumerate, HoneycombsHaveFifteenClasses) {
    for (unsigned seed = 1; seed <= 3; ++seed) {
        const auto c = curve_from_polynomial(fixtures::honeycomb(seed));
        const auto report = tritangent_report(c);
        ASSERT_EQ(report.classes.size(), 15U) << "seed " << seed;
        EXPECT_EQ(report.unmatched, 0U);
        const auto& g = report.skeleton.graph;
        std::set<int> thetas;
        for (const auto& cls : report.classes) {
            EXPECT_TRUE(cls.theta.effective);
            thetas.insert(cls.theta_index);
            // independent check that the contact is a theta characteristic
            EXPECT_TRUE(oracles::equivalent_by_periods(g, 2 * cls.contact(), canonical_divisor(g)));
            EXPECT_TRUE(oracles::equivalent_by_periods(g, cls.contact(), cls.theta.divisor));
            int chips = 0;
            for (const auto& [p, k] : cls.contact().support()) chips += k;
            EXPECT_EQ(chips, 3);
            const auto& rep = cls.representatives.front();
            int weight = 0;
            for (const int w : rep.certificate.partition) weight += w;
            EXPECT_EQ(weight, 6);
        }
        EXPECT_EQ(thetas.size(), 15U);
        for (std::size_t a = 0; a < report.classes.size(); ++a) {
            for (std::size_t b = 0; b < a; ++b) {
                EXPECT_FALSE(oracles::equivalent_by_periods(g, report.classes[a].contact(), report.classes[b].contact()));
            }
        }
    }
}

TEST(Enumerate, RepresentativesPassTheOracle) {
    const auto c = curve_from_polynomial(fixtures::honeycomb(1));
    for (const auto& cls : enumerate_tritangents(c)) expect_tritangent_by_oracle(c, cls.representatives.front().curve);
}

TEST(Enumerate, FamilyClassesContainANonVertexMidpoint) {
    const auto c = curve_from_polynomial(fixtures::honeycomb(1));
    int families = 0;
    for (const auto& cls : enumerate_tritangents(c)) {
        if (!cls.family) continue;
        ++families;
        const auto& r = cls.representatives;
        bool found = false;
        for (std::size_t i = 0; i < r.size() && !found; ++i) {
            for (std::size_t j = i + 1; j < r.size() && !found; ++j) {
                const Rational h(1, 2);
                const OneOneCurve m{h * (r[i].curve.h10 + r[j].curve.h10), h * (r[i].curve.h01 + r[j].curve.h01),
                                    h * (r[i].curve.h11 + r[j].curve.h11)};
                if (!certify_tritangent(c, m)) continue;
                if (theta_class_of(c, m).divisor != cls.theta.divisor) continue;
                expect_tritangent_by_oracle(c, m);
                found = true;
            }
        }
        EXPECT_TRUE(found) << "theta " << cls.theta_index;
    }
    EXPECT_GT(families, 0);
}

TEST(Enumerate, RandomCurvesStayWithinFifteen) {
    std::mt19937 r(7);
    int done = 0;
    for (int tries = 0; done < 4 && tries < 500; ++tries) {
        const auto c = curve_from_polynomial(fixtures::random_three_three(r));
        if (!is_smooth(c)) continue;
        const auto report = tritangent_report(c);
        EXPECT_LE(report.classes.size(), 15U);
        EXPECT_EQ(report.unmatched, 0U);
        ++done;
    }
    EXPECT_EQ(done, 4);
}

TEST(ThetaClassOf, NonTritangentThrows) {
    const auto c = curve_from_polynomial(fixtures::honeycomb(1));
    EXPECT_THROW(theta_class_of(c, {Rational(-181, 60), Rational(-173, 60), Rational(-7)}), DomainError);
}

TEST(CandidateEvents, NonEmptyForHoneycomb) {
    EXPECT_FALSE(candidate_events(curve_from_polynomial(fixtures::honeycomb(2))).empty());
}
