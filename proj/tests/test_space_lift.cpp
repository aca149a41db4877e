#include "curves.hpp"
#include "tritrop/space_lift.hpp"

#include <gtest/gtest.h>

#include <array>
#include <random>

using namespace tritrop;

namespace {

Point3 p3(Rational x, Rational y, Rational z) { return {x, y, z}; }

/// Tropical 3×3 determinant of the rows (0, p_i) with column `skip` removed;
/// `unique` is cleared when the maximum is attained by two permutations.
Rational minor(const std::array<Point3, 3>& pts, int skip, bool& unique) {
    const auto entry = [&](int r, int c) { return c == 0 ? Rational(0) : pts[static_cast<std::size_t>(r)][c - 1]; };
    std::array<int, 3> cols{};
    for (int c = 0, k = 0; c < 4; ++c) {
        if (c != skip) cols[static_cast<std::size_t>(k++)] = c;
    }
    std::array<int, 3> perm{0, 1, 2};
    std::optional<Rational> best;
    int hits = 0;
    do {
        Rational s(0);
        for (int r = 0; r < 3; ++r) s += entry(r, cols[static_cast<std::size_t>(perm[static_cast<std::size_t>(r)])]);
        if (!best || s > *best) {
            best = s;
            hits = 1;
        } else if (s == *best) {
            ++hits;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (hits > 1) unique = false;
    return *best;
}

/// Tropical Cramer rule: max(a0, a1 + x1, a2 + x2, a3 + x3) through the
/// points has a_k equal to the k-th tropical minor, so the vertex is
/// v_k = a0 − a_k. Empty when some minor is not attained uniquely.
std::optional<Point3> cramer_plane(const std::array<Point3, 3>& pts) {
    bool unique = true;
    std::array<Rational, 4> a;
    for (int k = 0; k < 4; ++k) a[static_cast<std::size_t>(k)] = minor(pts, k, unique);
    if (!unique) return std::nullopt;
    return p3(a[0] - a[1], a[0] - a[2], a[0] - a[3]);
}

Rational det(const Point3& a, const Point3& b, const Point3& c) {
    return a.x * (b.y * c.z - b.z * c.y) - a.y * (b.x * c.z - b.z * c.x) + a.z * (b.x * c.y - b.y * c.x);
}

/// Transversal crossings of the curve with the 2-cells of the plane moved by
/// s·w, keyed by (edge, cell).
std::map<std::pair<std::size_t, int>, std::pair<Point3, int>> crossings3(const SpaceCurve& c, const TropicalPlane& pl,
                                                                        const Point3& shift) {
    const auto& rays = plane_rays();
    const Point3 v = pl.vertex + shift;
    std::map<std::pair<std::size_t, int>, std::pair<Point3, int>> out;
    for (std::size_t k = 0; k < c.edges.size(); ++k) {
        const auto& e = c.edges[k];
        int cell = 0;
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = i + 1; j < 4; ++j, ++cell) {
                const Vec3 g1 = rays[i];
                const Vec3 g2 = rays[j];
                const std::int64_t w = det3(e.direction, g1, g2);
                if (w == 0) continue;
                // start + t·d − a·g1 − b·g2 = v, by Cramer's rule
                const Point3 r = v - e.start;
                const Point3 m1 = Rational(1) * e.direction;
                const Point3 m2 = Rational(-1) * g1;
                const Point3 m3 = Rational(-1) * g2;
                const Rational D = det(m1, m2, m3);
                const Rational t = det(r, m2, m3) / D;
                const Rational a = det(m1, r, m3) / D;
                const Rational b = det(m1, m2, r) / D;
                if (t.sign() < 0 || a.sign() < 0 || b.sign() < 0) continue;
                if (!e.ray && t > e.length) continue;
                const Point3 x = e.start + t * e.direction;
                out[{k, cell}] = {x, e.weight * static_cast<int>(w < 0 ? -w : w)};
            }
        }
    }
    return out;
}

/// Stable intersection by linear extrapolation from the shifts ε·w and 2ε·w.
std::map<Point3, int> stable_by_extrapolation3(const SpaceCurve& c, const TropicalPlane& pl, const Point3& w,
                                               const Rational& eps) {
    const auto one = crossings3(c, pl, eps * w);
    const auto two = crossings3(c, pl, Rational(2) * eps * w);
    if (one.size() != two.size()) throw std::logic_error("crossing pattern not stable at this epsilon");
    std::map<Point3, int> out;
    for (const auto& [key, val] : one) {
        const auto it = two.find(key);
        if (it == two.end()) throw std::logic_error("crossing pattern not stable at this epsilon");
        out[Rational(2) * val.first - it->second.first] += val.second;
    }
    return out;
}

int degree(const SpaceCurve& c) {
    int d = 0;
    for (const auto& e : c.edges) {
        if (e.ray) d += e.weight * static_cast<int>(std::max<std::int64_t>({0, e.direction.x, e.direction.y, e.direction.z}));
    }
    return d;
}

struct Lifted {
    PlaneCurve curve;
    std::vector<TritangentClass> classes;
    LiftMap phi;
    TropicalQuadric quadric;
};

const Lifted& honeycomb_lift() {
    static const Lifted l = [] {
        Lifted x;
        x.curve = curve_from_polynomial(fixtures::honeycomb(1));
        x.classes = enumerate_tritangents(x.curve);
        x.quadric = fixtures::quadric(1);
        x.phi = make_lift_map(x.quadric, lift_cover(x.curve, x.classes));
        return x;
    }();
    return l;
}

} // namespace

TEST(PlaneThrough, AgreesWithTropicalCramerOnGenericPoints) {
    std::mt19937 r(21);
    std::uniform_int_distribution<int> u(-40, 40);
    int checked = 0;
    for (int i = 0; i < 300; ++i) {
        std::array<Point3, 3> pts;
        for (auto& p : pts) p = p3(Rational(u(r), 3), Rational(u(r), 3), Rational(u(r), 3));
        const auto want = cramer_plane(pts);
        if (!want) continue;
        const auto pl = plane_through(pts[0], pts[1], pts[2]);
        EXPECT_EQ(pl.vertex, *want) << "trial " << i;
        for (const auto& p : pts) EXPECT_TRUE(pl.contains(p));
        ++checked;
    }
    EXPECT_GE(checked, 200);
}

TEST(PlaneThrough, PointsOnALineThroughE0AreDegenerate) {
    const Point3 p = p3(Rational(1), Rational(2), Rational(-1));
    const Point3 q = p + Vec3{1, 1, 1};
    const Point3 s = p + Vec3{3, 3, 3};
    EXPECT_THROW(plane_through(p, q, s), DomainError);
    EXPECT_THROW(plane_through(p, p, p), DomainError);
}

TEST(PlaneThrough, VertexAmongThePoints) {
    // the vertex itself and two points on distinct rays
    const Point3 v = p3(Rational(1, 2), Rational(-3), Rational(2));
    const auto pl = plane_through(v + Vec3{-5, -5, 0}, v + Vec3{0, -2, -2}, v + Vec3{-1, 0, -1});
    EXPECT_EQ(pl.vertex, v);
}

TEST(Quadric, BoundedFaceLiesOnTheQuadric) {
    for (unsigned seed = 1; seed <= 3; ++seed) {
        const auto q = fixtures::quadric(seed);
        const auto f = quadric_bounded_face(q);
        ASSERT_GE(f.vertices.size(), 3U);
        Point3 c;
        for (const auto& v : f.vertices) {
            EXPECT_TRUE(q.contains(v));
            c = c + v;
        }
        c = Rational(1, static_cast<std::int64_t>(f.vertices.size())) * c;
        EXPECT_TRUE(q.contains(c));
        EXPECT_EQ(dot(f.normal, f.u1), 0);
        EXPECT_EQ(dot(f.normal, f.u2), 0);
    }
}

TEST(Quadric, RejectsBadSupport) {
    EXPECT_THROW(TropicalQuadric({{Vec3{3, 0, 0}, Rational(0)}}), DomainError);
}

TEST(Lift, SexticLiesOnTheQuadricAndIsBalanced) {
    const auto& l = honeycomb_lift();
    const auto s = lift_curve(l.curve, l.phi);
    EXPECT_TRUE(is_balanced(s));
    EXPECT_EQ(degree(s), 6);
    for (const auto& v : s.vertices) EXPECT_TRUE(l.quadric.contains(v));
    for (const auto& e : s.edges) {
        const Point3 m = e.ray ? e.start + Rational(5, 2) * e.direction : Rational(1, 2) * (e.start + e.end);
        EXPECT_TRUE(l.quadric.contains(m));
    }
}

TEST(Lift, ConicsHaveDegreeTwo) {
    const auto& l = honeycomb_lift();
    for (const auto& cls : l.classes) {
        const auto c = lift_curve(one_one_curve(cls.representatives.front().curve), l.phi);
        EXPECT_TRUE(is_balanced(c));
        EXPECT_EQ(degree(c), 2);
    }
}

TEST(Lift, RejectsNonSquareBidegree) {
    const auto& l = honeycomb_lift();
    EXPECT_THROW(lift_curve(curve_from_polynomial(fixtures::curve_g()), l.phi), DomainError);
}

TEST(Lift, TritangentPlanesMatchTheOracle) {
    const auto& l = honeycomb_lift();
    const auto sextic = lift_curve(l.curve, l.phi);
    const auto planes = tritangent_planes_of_lift(l.curve, l.phi, l.classes);
    std::set<int> covered;
    int checked = 0;
    for (const auto& t : planes) {
        covered.insert(t.class_index);
        EXPECT_TRUE(plane_contains_curve(t.plane, lift_curve(one_one_curve(t.curve), l.phi)));
        int sum = 0;
        for (const int w : t.partition) sum += w;
        EXPECT_EQ(sum, 6);
        std::map<Point3, int> lib;
        for (const auto& p : stable_intersection(sextic, t.plane)) lib[p.point] += p.multiplicity;
        try {
            EXPECT_EQ(lib, stable_by_extrapolation3(sextic, t.plane, default_plane_perturbation(), Rational(1, 1000000)));
            ++checked;
        } catch (const std::logic_error&) {
        }
    }
    EXPECT_EQ(covered.size(), 15U);
    EXPECT_GE(checked, static_cast<int>(planes.size()) * 9 / 10);
}

TEST(StableIntersection3, IndependentOfPerturbation) {
    const auto& l = honeycomb_lift();
    const auto sextic = lift_curve(l.curve, l.phi);
    const auto planes = tritangent_planes_of_lift(l.curve, l.phi, l.classes, 1);
    for (const auto& t : planes) {
        const auto a = contact_partition(sextic, t.plane);
        const auto b = contact_partition(sextic, t.plane, p3(Rational(2), Rational(-3, 7), Rational(5, 11)));
        EXPECT_EQ(a, b);
    }
}
