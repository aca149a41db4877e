// Tritangent (1,1)-curves to a smooth (3,3)-curve, grouped by the theta
// characteristic of their retracted contact divisor.
//
// A (1,1)-curve max(0, a + X, b + Y, c + X + Y) is the point (a, b, c).
// With δ = c − a − b it has vertices
//   δ ≥ 0:  v1 = (−a, a − c) (rays down, right), v2 = (b − c, −b) (rays up, left)
//   δ ≤ 0:  v1 = (−a, −b)    (rays left, down),  v2 = (b − c, a − c) (rays right, up)
// The combinatorial type of the pair (C, L) only changes when a vertex of
// one curve crosses the line of an edge of the other, so tritangency is
// constant on the faces of a finite hyperplane arrangement in (a, b, c).
// Every face closure holds a vertex of the arrangement, and those vertices
// are the candidates.
#pragma once

#include "tritrop/intersect.hpp"
#include "tritrop/parallel.hpp"
#include "tritrop/theta.hpp"

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tritrop {

struct OneOneCurve {
    Rational h10;
    Rational h01;
    Rational h11;

    [[nodiscard]] Rational delta() const { return h11 - h10 - h01; }
    [[nodiscard]] TropicalPolynomial polynomial() const {
        return TropicalPolynomial({{{0, 0}, Rational(0)}, {{1, 0}, h10}, {{0, 1}, h01}, {{1, 1}, h11}});
    }
    friend bool operator==(const OneOneCurve&, const OneOneCurve&) = default;
    friend std::strong_ordering operator<=>(const OneOneCurve& a, const OneOneCurve& b) {
        if (auto c = a.h10 <=> b.h10; c != 0) return c;
        if (auto c = a.h01 <=> b.h01; c != 0) return c;
        return a.h11 <=> b.h11;
    }
};

/// One combinatorial tangency condition. Kinds:
///   'a' the bounded edge of L collinear with an edge of C,
///   'b' a ray of L collinear with an edge of C,
///   'c' a vertex of one curve on the line of an edge of the other,
///   'd' a transverse crossing of lattice index 2 (no equation).
struct EventTemplate {
    char kind = 'c';
    std::string label;
    int region = 0; // +1: δ ≥ 0, −1: δ ≤ 0, 0: both
    bool has_equation = true;
    std::array<std::int64_t, 3> normal{}; // normal · (a, b, c) = rhs
    Rational rhs;
};

struct TritangentRepresentative {
    OneOneCurve curve;
    TritangencyCertificate certificate;
    Divisor contact; // retracted to the skeleton
};

struct TritangentClass {
    ThetaCharacteristic theta;
    int theta_index = -1; // position in all_theta_characteristics(skeleton)
    std::vector<TritangentRepresentative> representatives;
    bool family = false;

    [[nodiscard]] const Divisor& contact() const { return representatives.front().contact; }
};

struct TritangentReport {
    Skeleton skeleton;
    std::vector<ThetaCharacteristic> thetas;
    std::vector<TritangentClass> classes;
    std::size_t candidates = 0; // distinct arrangement vertices examined
    std::size_t certified = 0;
    std::size_t unmatched = 0;  // certified contacts matching no theta
};

namespace detail {

using Form = std::array<std::int64_t, 3>;

/// Affine coordinates of the two L vertices in a region, as linear forms in (a, b, c).
struct RegionShape {
    std::array<Form, 2> vx;
    std::array<Form, 2> vy;
    Vec2 diagonal;                        // direction from v1 to v2
    std::array<std::array<Vec2, 2>, 2> rays; // rays at v1, v2
};

inline RegionShape region_shape(int region) {
    if (region > 0) {
        return {{Form{-1, 0, 0}, Form{0, 1, -1}},
                {Form{1, 0, -1}, Form{0, -1, 0}},
                {-1, 1},
                {{{Vec2{0, -1}, Vec2{1, 0}}, {Vec2{0, 1}, Vec2{-1, 0}}}}};
    }
    return {{Form{-1, 0, 0}, Form{0, 1, -1}},
            {Form{0, -1, 0}, Form{1, 0, -1}},
            {1, 1},
            {{{Vec2{-1, 0}, Vec2{0, -1}}, {Vec2{1, 0}, Vec2{0, 1}}}}};
}

inline Form combine(const Form& x, std::int64_t s, const Form& y, std::int64_t t) {
    return {x[0] * s + y[0] * t, x[1] * s + y[1] * t, x[2] * s + y[2] * t};
}

inline std::string fmt_point(const Point2& p) { return "(" + p.x.pretty() + "," + p.y.pretty() + ")"; }

inline void require_three_three(const PlaneCurve& c) {
    const auto prof = degree_profile(c);
    if (!prof.bidegree || prof.d1 != 3 || prof.d2 != 3) throw DomainError("curve is not of bidegree (3,3)");
    if (!is_smooth(c)) throw DomainError("curve is not smooth");
}

} // namespace detail

/// The finite list of tangency templates of C, grouped by region.
inline std::vector<EventTemplate> candidate_events(const PlaneCurve& c) {
    detail::require_three_three(c);
    std::vector<EventTemplate> out;
    std::set<std::tuple<int, detail::Form, Rational>> seen;
    const auto push = [&](EventTemplate t) {
        // normalize sign so the first nonzero coefficient is positive
        for (const auto x : t.normal) {
            if (x == 0) continue;
            if (x < 0) {
                for (auto& y : t.normal) y = -y;
                t.rhs = -t.rhs;
            }
            break;
        }
        if (seen.emplace(t.region, t.normal, t.rhs).second) out.push_back(std::move(t));
    };
    // which directions leave each C vertex
    std::vector<std::set<Vec2>> dirs(c.vertices.size());
    for (const auto& e : c.edges) {
        dirs[static_cast<std::size_t>(e.from)].insert(detail::normalized(e.direction));
        if (e.kind == EdgeKind::segment) dirs[static_cast<std::size_t>(e.to)].insert(detail::normalized(e.direction));
    }
    push({'c', "L degenerates to a single vertex", 0, true, {-1, -1, 1}, Rational(0)});
    for (const int region : {1, -1}) {
        const auto shape = detail::region_shape(region);
        const std::string rname = region > 0 ? "A" : "B";
        const Vec2 diag = detail::normalized(shape.diagonal);
        for (std::size_t k = 0; k < c.vertices.size(); ++k) {
            const Point2& p = c.vertices[k];
            const bool has_h = dirs[k].count(Vec2{1, 0}) != 0;
            const bool has_v = dirs[k].count(Vec2{0, 1}) != 0;
            for (int i = 0; i < 2; ++i) {
                const std::string vi = "v" + std::to_string(i + 1);
                push({has_v ? 'b' : 'c', rname + ": " + vi + ".x on vertical through C-vertex " + detail::fmt_point(p), region,
                      true, shape.vx[static_cast<std::size_t>(i)], p.x});
                push({has_h ? 'b' : 'c', rname + ": " + vi + ".y on horizontal through C-vertex " + detail::fmt_point(p),
                      region, true, shape.vy[static_cast<std::size_t>(i)], p.y});
            }
            // diagonal of L through p: cross(p − v1, d) = 0
            const Vec2 d = shape.diagonal;
            const detail::Form f = detail::combine(shape.vx[0], d.y, shape.vy[0], -d.x);
            push({dirs[k].count(diag) != 0 ? 'a' : 'c',
                  rname + ": bounded edge of L through C-vertex " + detail::fmt_point(p), region, true, f,
                  p.x * d.y - p.y * d.x});
        }
        for (std::size_t idx = 0; idx < c.edges.size(); ++idx) {
            const auto& e = c.edges[idx];
            const Vec2 d = e.direction;
            if (d.x == 0 || d.y == 0) continue; // axis lines are covered by vertex coordinates
            for (int i = 0; i < 2; ++i) {
                // cross(v_i − start, d) = 0
                const detail::Form f = detail::combine(shape.vx[static_cast<std::size_t>(i)], d.y,
                                                       shape.vy[static_cast<std::size_t>(i)], -d.x);
                push({detail::normalized(d) == diag ? 'a' : 'c',
                      rname + ": v" + std::to_string(i + 1) + " on line of C-edge " + std::to_string(idx), region, true,
                      f, e.start.x * d.y - e.start.y * d.x});
            }
        }
        // index-2 crossings carry no equation
        for (std::size_t idx = 0; idx < c.edges.size(); ++idx) {
            const auto& e = c.edges[idx];
            const auto index_with = [&](const Vec2& u) {
                const std::int64_t det = cross(u, e.direction);
                return (det < 0 ? -det : det) * e.weight;
            };
            if (index_with(shape.diagonal) == 2) {
                EventTemplate t{'d', rname + ": bounded edge of L crosses C-edge " + std::to_string(idx) + " with index 2",
                                region, false, {}, Rational(0)};
                out.push_back(t);
            }
            for (const auto& u : {Vec2{1, 0}, Vec2{0, 1}}) {
                if (index_with(u) == 2) {
                    EventTemplate t{'d', rname + ": ray of L crosses C-edge " + std::to_string(idx) + " with index 2",
                                    region, false, {}, Rational(0)};
                    out.push_back(t);
                }
            }
        }
    }
    return out;
}

namespace detail {

/// Fast rejection: a crossing interior to an edge of each curve with
/// index 1 is an isolated simple intersection point.
inline bool has_simple_crossing(const PlaneCurve& c, const PlaneCurve& l) {
    for (const auto& e2 : l.edges) {
        for (const auto& e1 : c.edges) {
            const std::int64_t det = cross(e1.direction, e2.direction);
            if (det != 1 && det != -1) continue;
            if (e1.weight != 1 || e2.weight != 1) continue;
            const Point2 w = e2.start - e1.start;
            const Rational s = (w.x * e2.direction.y - w.y * e2.direction.x) / Rational(det);
            const Rational t = (w.x * e1.direction.y - w.y * e1.direction.x) / Rational(det);
            const auto interior = [](const CurveEdge& e, const Rational& x) {
                if (e.kind == EdgeKind::line) return true;
                if (x.sign() <= 0) return false;
                return e.kind == EdgeKind::ray || x < e.length();
            };
            if (interior(e1, s) && interior(e2, t)) return true;
        }
    }
    return false;
}

/// Reduced forms of the effective thetas, for class lookup.
struct ThetaIndex {
    const Skeleton* skel = nullptr;
    std::vector<ThetaCharacteristic> thetas;
    std::map<Divisor, int> by_reduced;

    explicit ThetaIndex(const Skeleton& s) : skel(&s), thetas(all_theta_characteristics(s.graph)) {
        const auto q = base_point(s.graph);
        for (std::size_t i = 0; i < thetas.size(); ++i) {
            if (thetas[i].effective) by_reduced.emplace(reduce(s.graph, thetas[i].divisor, q), static_cast<int>(i));
        }
    }

    [[nodiscard]] std::optional<int> lookup(const Divisor& d) const {
        const auto it = by_reduced.find(reduce(skel->graph, d, base_point(skel->graph)));
        if (it == by_reduced.end()) return std::nullopt;
        return it->second;
    }
};

inline Divisor retract_contact(const PlaneCurve& c, const Skeleton& s, const TritangencyCertificate& cert) {
    Divisor d;
    for (const auto& [p, k] : cert.contact) d.add(retract(c, s, p), k);
    return d;
}

/// Unique solution of three equations, if the normals are independent.
inline std::optional<OneOneCurve> solve3(const EventTemplate& x, const EventTemplate& y, const EventTemplate& z) {
    const auto& m0 = x.normal;
    const auto& m1 = y.normal;
    const auto& m2 = z.normal;
    const std::int64_t c00 = m1[1] * m2[2] - m1[2] * m2[1];
    const std::int64_t c01 = m1[2] * m2[0] - m1[0] * m2[2];
    const std::int64_t c02 = m1[0] * m2[1] - m1[1] * m2[0];
    const std::int64_t det = m0[0] * c00 + m0[1] * c01 + m0[2] * c02;
    if (det == 0) return std::nullopt;
    // adjugate columns: m1×m2, m2×m0, m0×m1
    const std::array<std::int64_t, 3> r1{m2[1] * m0[2] - m2[2] * m0[1], m2[2] * m0[0] - m2[0] * m0[2],
                                         m2[0] * m0[1] - m2[1] * m0[0]};
    const std::array<std::int64_t, 3> r2{m0[1] * m1[2] - m0[2] * m1[1], m0[2] * m1[0] - m0[0] * m1[2],
                                         m0[0] * m1[1] - m0[1] * m1[0]};
    const Rational d(det);
    const Rational a = (x.rhs * Rational(c00) + y.rhs * Rational(r1[0]) + z.rhs * Rational(r2[0])) / d;
    const Rational b = (x.rhs * Rational(c01) + y.rhs * Rational(r1[1]) + z.rhs * Rational(r2[1])) / d;
    const Rational c = (x.rhs * Rational(c02) + y.rhs * Rational(r1[2]) + z.rhs * Rational(r2[2])) / d;
    return OneOneCurve{a, b, c};
}

} // namespace detail

/// Builds the plane curve of L directly from its region formulas.
inline PlaneCurve one_one_curve(const OneOneCurve& l) {
    PlaneCurve c;
    c.polynomial = l.polynomial();
    const Rational a = l.h10;
    const Rational b = l.h01;
    const Rational h = l.h11;
    const int sign = l.delta().sign();
    const auto ray = [&](int from, Vec2 dir, int i, int j) {
        CurveEdge e;
        e.kind = EdgeKind::ray;
        e.from = from;
        e.start = c.vertices[static_cast<std::size_t>(from)];
        e.direction = dir;
        e.dual = {i, j};
        e.cells = {from, -1};
        c.edges.push_back(e);
    };
    // support order: 0 = 1, 1 = x, 2 = y, 3 = xy
    if (sign == 0) {
        c.vertices = {{-a, -b}};
        c.cells = {{{0, 1, 3, 2}, {0, 1, 2, 3}}};
        ray(0, {0, -1}, 0, 1);
        ray(0, {1, 0}, 1, 3);
        ray(0, {0, 1}, 2, 3);
        ray(0, {-1, 0}, 0, 2);
        return c;
    }
    Vec2 diag;
    if (sign > 0) {
        c.vertices = {{-a, a - h}, {b - h, -b}};
        c.cells = {{{0, 1, 3}, {0, 1, 3}}, {{0, 3, 2}, {0, 2, 3}}};
        diag = {-1, 1};
        ray(0, {0, -1}, 0, 1);
        ray(0, {1, 0}, 1, 3);
        ray(1, {0, 1}, 2, 3);
        ray(1, {-1, 0}, 0, 2);
    } else {
        c.vertices = {{-a, -b}, {b - h, a - h}};
        c.cells = {{{0, 1, 2}, {0, 1, 2}}, {{1, 3, 2}, {1, 2, 3}}};
        diag = {1, 1};
        ray(0, {-1, 0}, 0, 2);
        ray(0, {0, -1}, 0, 1);
        ray(1, {1, 0}, 1, 3);
        ray(1, {0, 1}, 2, 3);
    }
    CurveEdge e;
    e.kind = EdgeKind::segment;
    e.from = 0;
    e.to = 1;
    e.start = c.vertices[0];
    e.end = c.vertices[1];
    e.direction = diag;
    e.dual = sign > 0 ? std::array<int, 2>{0, 3} : std::array<int, 2>{1, 2};
    e.cells = {0, 1};
    c.edges.push_back(e);
    return c;
}

inline std::optional<TritangencyCertificate> certify_tritangent(const PlaneCurve& c, const OneOneCurve& l) {
    const auto lc = one_one_curve(l);
    if (detail::has_simple_crossing(c, lc)) return std::nullopt;
    return tritangency_certificate(c, lc);
}

/// Tritangent solutions of a template triple. A rank-2 system is a line of
/// (1,1)-curves; it is sampled at its crossings with the other templates
/// and between them, and flagged as a family when an open piece certifies.
struct TemplateSolution {
    std::vector<OneOneCurve> curves;
    bool family = false;
};

namespace detail {

inline bool region_allows(int region, const OneOneCurve& l) {
    return region == 0 || l.delta().sign() * region >= 0;
}

inline int common_region(const EventTemplate& x, const EventTemplate& y, const EventTemplate& z) {
    int r = 0;
    for (const int t : {x.region, y.region, z.region}) {
        if (t == 0) continue;
        if (r != 0 && r != t) return 2;
        r = t;
    }
    return r;
}

inline Rational dot(const Form& n, const OneOneCurve& l) {
    return Rational(n[0]) * l.h10 + Rational(n[1]) * l.h01 + Rational(n[2]) * l.h11;
}

inline Form cross3(const Form& a, const Form& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

} // namespace detail

inline TemplateSolution solve_template(const PlaneCurve& c, const std::vector<EventTemplate>& all, const EventTemplate& x,
                                       const EventTemplate& y, const EventTemplate& z) {
    TemplateSolution out;
    if (!x.has_equation || !y.has_equation || !z.has_equation) return out;
    const int region = detail::common_region(x, y, z);
    if (region == 2) return out;
    if (auto l = detail::solve3(x, y, z)) {
        if (detail::region_allows(region, *l) && certify_tritangent(c, *l)) out.curves.push_back(*l);
        return out;
    }
    // rank ≤ 2: find two independent rows and a point on their common line
    const std::array<const EventTemplate*, 3> rows{&x, &y, &z};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = i + 1; j < 3; ++j) {
            const detail::Form dir = detail::cross3(rows[i]->normal, rows[j]->normal);
            if (dir == detail::Form{0, 0, 0}) continue;
            EventTemplate pin{'c', "", 0, true, dir, Rational(0)};
            const auto base = detail::solve3(*rows[i], *rows[j], pin);
            if (!base) continue;
            const std::size_t k = 3 - i - j;
            if (detail::dot(rows[k]->normal, *base) != rows[k]->rhs) return out; // inconsistent
            std::set<Rational> cuts;
            const OneOneCurve step{Rational(dir[0]), Rational(dir[1]), Rational(dir[2])};
            for (const auto& t : all) {
                if (!t.has_equation || (t.region != 0 && region != 0 && t.region != region)) continue;
                const Rational slope = detail::dot(t.normal, step);
                if (slope.is_zero()) continue;
                cuts.insert((t.rhs - detail::dot(t.normal, *base)) / slope);
            }
            const auto at = [&](const Rational& t) {
                return OneOneCurve{base->h10 + t * step.h10, base->h01 + t * step.h01, base->h11 + t * step.h11};
            };
            std::vector<Rational> ts(cuts.begin(), cuts.end());
            std::vector<Rational> samples = ts;
            for (std::size_t q = 0; q + 1 < ts.size(); ++q) samples.push_back(Rational(1, 2) * (ts[q] + ts[q + 1]));
            for (const auto& t : samples) {
                const auto l = at(t);
                if (!detail::region_allows(region, l) || !certify_tritangent(c, l)) continue;
                out.curves.push_back(l);
                if (!cuts.count(t)) out.family = true;
            }
            std::sort(out.curves.begin(), out.curves.end());
            return out;
        }
    }
    return out;
}

inline TemplateSolution solve_template(const PlaneCurve& c, const EventTemplate& x, const EventTemplate& y,
                                       const EventTemplate& z) {
    return solve_template(c, candidate_events(c), x, y, z);
}

/// Certified tritangent (1,1)-curves grouped by theta characteristic,
/// ordered by theta index.
inline TritangentReport tritangent_report(const PlaneCurve& c) {
    const auto templates = candidate_events(c);
    TritangentReport report;
    report.skeleton = skeleton(c);
    const detail::ThetaIndex index(report.skeleton);
    report.thetas = index.thetas;

    // arrangement vertices, region by region
    std::set<OneOneCurve> candidates;
    for (const int region : {1, -1}) {
        std::vector<const EventTemplate*> rows;
        for (const auto& t : templates) {
            if (t.has_equation && (t.region == region || t.region == 0)) rows.push_back(&t);
        }
        std::vector<std::vector<OneOneCurve>> found(rows.size());
        parallel_for(rows.size(), [&](std::size_t i) {
            for (std::size_t j = i + 1; j < rows.size(); ++j) {
                for (std::size_t k = j + 1; k < rows.size(); ++k) {
                    const auto l = detail::solve3(*rows[i], *rows[j], *rows[k]);
                    if (!l || !detail::region_allows(region, *l)) continue;
                    if (detail::has_simple_crossing(c, one_one_curve(*l))) continue;
                    found[i].push_back(*l);
                }
            }
        });
        for (const auto& f : found) candidates.insert(f.begin(), f.end());
    }
    report.candidates = candidates.size();

    const std::vector<OneOneCurve> list(candidates.begin(), candidates.end());
    std::vector<std::optional<TritangentRepresentative>> reps(list.size());
    std::vector<std::optional<int>> match(list.size());
    parallel_for(list.size(), [&](std::size_t i) {
        auto cert = tritangency_certificate(c, one_one_curve(list[i]));
        if (!cert) return;
        Divisor d = detail::retract_contact(c, report.skeleton, *cert);
        match[i] = index.lookup(d);
        reps[i] = TritangentRepresentative{list[i], std::move(*cert), std::move(d)};
    });
    std::map<int, TritangentClass> classes;
    for (std::size_t i = 0; i < list.size(); ++i) {
        if (!reps[i]) continue;
        ++report.certified;
        if (!match[i]) {
            ++report.unmatched;
            continue;
        }
        auto& cls = classes[*match[i]];
        cls.theta_index = *match[i];
        cls.theta = index.thetas[static_cast<std::size_t>(*match[i])];
        cls.representatives.push_back(std::move(*reps[i]));
    }
    // Tritangency is constant on open faces of the arrangement, so a certified
    // midpoint that is not a vertex lies in a positive-dimensional family.
    for (auto& [k, cls] : classes) {
        const auto& r = cls.representatives;
        for (std::size_t i = 0; i < r.size() && !cls.family; ++i) {
            for (std::size_t j = i + 1; j < r.size() && !cls.family; ++j) {
                const Rational h(1, 2);
                const OneOneCurve mid{h * (r[i].curve.h10 + r[j].curve.h10), h * (r[i].curve.h01 + r[j].curve.h01),
                                      h * (r[i].curve.h11 + r[j].curve.h11)};
                if (candidates.count(mid) != 0) continue; // arrangement vertex, not an open face
                const auto cert = certify_tritangent(c, mid);
                if (!cert) continue;
                const auto m = index.lookup(detail::retract_contact(c, report.skeleton, *cert));
                if (m && *m == k) cls.family = true;
            }
        }
        report.classes.push_back(std::move(cls));
    }
    if (report.classes.size() > 15) throw InternalError("more than 15 tritangent classes");
    return report;
}

inline std::vector<TritangentClass> enumerate_tritangents(const PlaneCurve& c) { return tritangent_report(c).classes; }

/// Theta characteristic of the class of a tritangent L.
inline ThetaCharacteristic theta_class_of(const PlaneCurve& c, const OneOneCurve& l) {
    detail::require_three_three(c);
    const auto cert = certify_tritangent(c, l);
    if (!cert) throw DomainError("curve is not tritangent");
    const auto s = skeleton(c);
    const detail::ThetaIndex index(s);
    const auto m = index.lookup(detail::retract_contact(c, s, *cert));
    if (!m) throw InternalError("contact divisor matches no theta characteristic");
    return index.thetas[static_cast<std::size_t>(*m)];
}

} // namespace tritrop
