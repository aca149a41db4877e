#include "fixtures.hpp"
#include "oracles.hpp"
#include "tritrop/graph.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace tritrop;
using fixtures::circle;
using fixtures::segment;
using fixtures::two_hexagons;

namespace {

Divisor single(const GraphPoint& p, int c = 1) {
    Divisor d;
    d.add(p, c);
    return d;
}

} // namespace

TEST(Genus, Examples) {
    EXPECT_EQ(genus(fixtures::hexagon()), 1);
    EXPECT_EQ(genus(segment()), 0);
    EXPECT_EQ(genus(two_hexagons()), 2);
    EXPECT_EQ(genus(circle()), 1);
}

TEST(Genus, DisconnectedThrows) {
    const MetricGraph g(3, {{0, 1, 1}});
    EXPECT_THROW(genus(g), DomainError);
}

TEST(MetricGraph, RejectsBadEdges) {
    EXPECT_THROW(MetricGraph(2, {{0, 1, 0}}), DomainError);
    EXPECT_THROW(MetricGraph(2, {{0, 2, 1}}), DomainError);
}

TEST(GraphPoint, EndpointOffsetsCanonicalize) {
    const auto g = segment(Rational(3, 2));
    EXPECT_EQ(GraphPoint::on_edge(g, 0, 0), GraphPoint::vertex(0));
    EXPECT_EQ(GraphPoint::on_edge(g, 0, Rational(3, 2)), GraphPoint::vertex(1));
    EXPECT_FALSE(GraphPoint::on_edge(g, 0, Rational(1, 2)).on_vertex);
    EXPECT_THROW(GraphPoint::on_edge(g, 0, 2), DomainError);
}

TEST(CanonicalDivisor, Examples) {
    const auto k_seg = canonical_divisor(segment());
    EXPECT_EQ(k_seg.coeff(GraphPoint::vertex(0)), -1);
    EXPECT_EQ(k_seg.coeff(GraphPoint::vertex(1)), -1);
    EXPECT_EQ(k_seg.degree(), -2);

    const auto k2 = canonical_divisor(two_hexagons());
    EXPECT_EQ(k2.degree(), 2);
    EXPECT_EQ(k2.coeff(GraphPoint::vertex(0)), 1);
    EXPECT_EQ(k2.coeff(GraphPoint::vertex(1)), 1);
    EXPECT_EQ(k2.support().size(), 2U);

    EXPECT_TRUE(canonical_divisor(circle()).empty());
}

TEST(Reduce, AlreadyReducedAtBasePoint) {
    const auto g = two_hexagons();
    const auto d = single(GraphPoint::vertex(0), 3);
    EXPECT_EQ(reduce(g, d, GraphPoint::vertex(0)), d);
}

TEST(Reduce, CirclePointStaysPut) {
    const auto g = circle();
    const auto p = GraphPoint::on_edge(g, 0, Rational(1, 3));
    const auto d = single(p);
    // Oracle: p is not equivalent to the base vertex, and the only effective
    // degree-1 divisors are single points, so p is its own reduced form.
    EXPECT_FALSE(oracles::equivalent_by_laplacian(g, d, single(GraphPoint::vertex(0))));
    EXPECT_EQ(reduce(g, d, GraphPoint::vertex(0)), d);
}

TEST(Reduce, SegmentMovesChipToBase) {
    const auto g = segment(Rational(5, 3));
    EXPECT_EQ(reduce(g, single(GraphPoint::vertex(1)), GraphPoint::vertex(0)), single(GraphPoint::vertex(0)));
}

TEST(Reduce, NegativeChipsAwayFromBaseAreCleared) {
    const auto g = two_hexagons();
    Divisor d;
    d.add(GraphPoint::vertex(7), -2);
    d.add(GraphPoint::on_edge(g, 3, Rational(1, 4)), 3);
    const auto r = reduce(g, d, GraphPoint::vertex(0));
    EXPECT_EQ(r.degree(), 1);
    for (const auto& [p, c] : r.support()) {
        if (p != GraphPoint::vertex(0)) {
            EXPECT_GT(c, 0);
        }
    }
    EXPECT_TRUE(oracles::equivalent_by_laplacian(g, d, r));
}

TEST(Reduce, PropertiesOnRandomGraphs) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const auto g = fixtures::random_graph(rng, 1 + trial % 4, 2, 4);
        const auto d = fixtures::random_divisor(rng, g, trial % 5 - 1, 3, 2);
        const auto q = fixtures::random_point(rng, g, 2);
        const auto r = reduce(g, d, q);
        EXPECT_EQ(r.degree(), d.degree());
        EXPECT_EQ(reduce(g, r, q), r) << "not idempotent, trial " << trial;
        EXPECT_TRUE(oracles::equivalent_by_laplacian(g, d, r)) << "trial " << trial;
        for (const auto& [p, c] : r.support()) {
            if (p != q) {
                EXPECT_GE(c, 0);
            }
        }
    }
}

TEST(IsEquivalent, Examples) {
    const auto c = circle();
    const auto p = single(GraphPoint::on_edge(c, 0, Rational(1, 3)));
    const auto q = single(GraphPoint::on_edge(c, 0, Rational(2, 3)));
    EXPECT_TRUE(is_equivalent(c, p, p));
    EXPECT_FALSE(is_equivalent(c, p, q));
    const auto t = segment(4);
    EXPECT_TRUE(is_equivalent(t, single(GraphPoint::vertex(1)), single(GraphPoint::on_edge(t, 0, Rational(1, 7)))));
}

TEST(IsEquivalent, AgreesWithLaplacianOracle) {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 80; ++trial) {
        const auto g = fixtures::random_graph(rng, 1 + trial % 3, 2, 4);
        const auto a = fixtures::random_divisor(rng, g, 1, 1, 2);
        // Half the trials compare against a chip-fired copy, half against noise.
        Divisor b = trial % 2 == 0 ? reduce(g, a, fixtures::random_point(rng, g, 2))
                                   : fixtures::random_divisor(rng, g, 1, 1, 2);
        EXPECT_EQ(is_equivalent(g, a, b), oracles::equivalent_by_laplacian(g, a, b)) << "trial " << trial;
    }
}

TEST(IsEquivalent, EquivalenceRelationOnSamples) {
    std::mt19937 rng(3);
    const auto g = two_hexagons();
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = fixtures::random_divisor(rng, g, 2, 1);
        const auto b = reduce(g, a, fixtures::random_point(rng, g));
        const auto c = reduce(g, b, fixtures::random_point(rng, g));
        EXPECT_TRUE(is_equivalent(g, a, b));
        EXPECT_TRUE(is_equivalent(g, b, a));
        EXPECT_TRUE(is_equivalent(g, a, c));
    }
}

TEST(Rank, Examples) {
    const auto g2 = two_hexagons();
    EXPECT_EQ(rank(g2, Divisor{}), 0);
    EXPECT_EQ(rank(g2, canonical_divisor(g2)), 1);
    EXPECT_EQ(rank(circle(), single(GraphPoint::vertex(0), 2)), 1);
    EXPECT_EQ(rank(segment(), single(GraphPoint::vertex(0), -1)), -1);
}

TEST(Rank, DegreeBounds) {
    std::mt19937 rng(19);
    for (int trial = 0; trial < 20; ++trial) {
        const int g = 1 + trial % 3;
        const auto graph = fixtures::random_graph(rng, g);
        const auto neg = fixtures::random_divisor(rng, graph, -1, 2);
        EXPECT_EQ(rank(graph, neg), -1);
        const int big = 2 * g - 1;
        const auto d = fixtures::random_divisor(rng, graph, big, 2);
        EXPECT_EQ(rank(graph, d), big - g);
    }
}

TEST(RiemannRoch, TreeAndGenusTwo) {
    const auto t = MetricGraph(3, {{0, 1, 1}, {1, 2, Rational(1, 2)}});
    EXPECT_EQ(riemann_roch_residual(t, single(GraphPoint::vertex(2), 2)), 0);
    const auto g2 = two_hexagons();
    EXPECT_EQ(riemann_roch_residual(g2, canonical_divisor(g2)), 0);
}

TEST(RiemannRoch, RandomGenusThreeDegreeFour) {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const auto g = fixtures::random_graph(rng, 3);
        const auto d = fixtures::random_divisor(rng, g, 4, 2);
        EXPECT_EQ(riemann_roch_residual(g, d), 0) << "trial " << trial;
    }
}

TEST(Oracles, PeriodAndLaplacianOraclesAgree) {
    std::mt19937 rng(21);
    int equivalent = 0;
    for (int i = 0; i < 150; ++i) {
        const auto g = fixtures::random_graph(rng, 1 + i % 3, 3, 4);
        const auto a = fixtures::random_divisor(rng, g, 1, 2, 2);
        const auto b = i % 2 == 0 ? reduce(g, a, GraphPoint::vertex(0)) : fixtures::random_divisor(rng, g, 1, 2, 2);
        const bool lap = oracles::equivalent_by_laplacian(g, a, b);
        EXPECT_EQ(lap, oracles::equivalent_by_periods(g, a, b));
        equivalent += lap ? 1 : 0;
    }
    EXPECT_GT(equivalent, 70);
}
