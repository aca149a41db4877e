// Tropical planes and quadrics in R³, the lift of (d,d)-curves onto the
// bounded face of a smooth tropical quadric, and tritangent planes to the
// lifted sextic. Max-plus convention throughout: the plane with vertex v is
// the corner locus of max(0, x1 − v1, x2 − v2, x3 − v3).
#pragma once

#include "tritrop/tritangent.hpp"

#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tritrop {

struct Point3 {
    Rational x;
    Rational y;
    Rational z;

    [[nodiscard]] const Rational& operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    Rational& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

    friend Point3 operator+(const Point3& a, const Point3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Point3 operator-(const Point3& a, const Point3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Point3 operator*(const Rational& s, const Point3& p) { return {s * p.x, s * p.y, s * p.z}; }
    friend bool operator==(const Point3&, const Point3&) = default;
    friend std::strong_ordering operator<=>(const Point3& a, const Point3& b) {
        if (auto c = a.x <=> b.x; c != 0) return c;
        if (auto c = a.y <=> b.y; c != 0) return c;
        return a.z <=> b.z;
    }
};

struct Vec3 {
    std::int64_t x = 0;
    std::int64_t y = 0;
    std::int64_t z = 0;

    [[nodiscard]] std::int64_t operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
    friend Vec3 operator*(std::int64_t s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
    friend bool operator==(const Vec3&, const Vec3&) = default;
    friend auto operator<=>(const Vec3&, const Vec3&) = default;
};

inline Point3 operator+(const Point3& p, const Vec3& v) { return {p.x + v.x, p.y + v.y, p.z + v.z}; }
inline Point3 operator*(const Rational& s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
inline std::int64_t dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline std::int64_t det3(const Vec3& a, const Vec3& b, const Vec3& c) {
    return a.x * (b.y * c.z - b.z * c.y) - a.y * (b.x * c.z - b.z * c.x) + a.z * (b.x * c.y - b.y * c.x);
}

/// The four ray directions of a tropical plane: −e1, −e2, −e3, e0 = (1,1,1).
inline const std::array<Vec3, 4>& plane_rays() {
    static const std::array<Vec3, 4> rays{Vec3{-1, 0, 0}, Vec3{0, -1, 0}, Vec3{0, 0, -1}, Vec3{1, 1, 1}};
    return rays;
}

struct TropicalPlane {
    Point3 vertex;

    /// Whether the maximum of 0, x1 − v1, x2 − v2, x3 − v3 is attained twice.
    [[nodiscard]] bool contains(const Point3& p) const {
        std::array<Rational, 4> t{Rational(0), p.x - vertex.x, p.y - vertex.y, p.z - vertex.z};
        const Rational m = max(max(t[0], t[1]), max(t[2], t[3]));
        int hits = 0;
        for (const auto& x : t) hits += x == m ? 1 : 0;
        return hits >= 2;
    }
    friend bool operator==(const TropicalPlane&, const TropicalPlane&) = default;
};

struct QuadricTerm {
    Vec3 exponent;
    Rational height;
};

/// Tropical polynomial of degree 2 in three variables.
class TropicalQuadric {
  public:
    TropicalQuadric() = default;
    explicit TropicalQuadric(std::vector<QuadricTerm> terms) : terms_(std::move(terms)) {
        std::set<Vec3> seen;
        for (const auto& t : terms_) {
            const auto& e = t.exponent;
            if (e.x < 0 || e.y < 0 || e.z < 0 || e.x + e.y + e.z > 2) throw DomainError("exponent outside 2Δ3");
            if (!seen.insert(e).second) throw DomainError("repeated support point");
        }
        if (terms_.size() != 10) throw DomainError("quadric needs all 10 monomials of degree ≤ 2");
    }

    [[nodiscard]] const std::vector<QuadricTerm>& terms() const noexcept { return terms_; }

    [[nodiscard]] Rational term_value(std::size_t i, const Point3& x) const {
        const auto& t = terms_[i];
        return t.height + x.x * t.exponent.x + x.y * t.exponent.y + x.z * t.exponent.z;
    }

    [[nodiscard]] bool contains(const Point3& x) const {
        Rational best = term_value(0, x);
        for (std::size_t i = 1; i < terms_.size(); ++i) best = max(best, term_value(i, x));
        int hits = 0;
        for (std::size_t i = 0; i < terms_.size(); ++i) hits += term_value(i, x) == best ? 1 : 0;
        return hits >= 2;
    }

  private:
    std::vector<QuadricTerm> terms_;
};

namespace detail {

using Mat3 = std::array<std::array<Rational, 3>, 3>;

/// Solution of m·x = b when m is invertible.
inline std::optional<Point3> solve_linear(Mat3 m, Point3 b) {
    for (int c = 0; c < 3; ++c) {
        int piv = -1;
        for (int r = c; r < 3; ++r) {
            if (!m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].is_zero()) {
                piv = r;
                break;
            }
        }
        if (piv < 0) return std::nullopt;
        std::swap(m[static_cast<std::size_t>(c)], m[static_cast<std::size_t>(piv)]);
        std::swap(b[c], b[piv]);
        for (int r = 0; r < 3; ++r) {
            if (r == c) continue;
            const Rational f = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] /
                               m[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)];
            if (f.is_zero()) continue;
            for (int k = 0; k < 3; ++k) {
                m[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] -=
                    f * m[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)];
            }
            b[r] -= f * b[c];
        }
    }
    Point3 x;
    for (int i = 0; i < 3; ++i) x[i] = b[i] / m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    return x;
}

inline Mat3 columns(const Vec3& a, const Vec3& b, const Vec3& c) {
    Mat3 m;
    for (int i = 0; i < 3; ++i) {
        m[static_cast<std::size_t>(i)] = {Rational(a[i]), Rational(b[i]), Rational(c[i])};
    }
    return m;
}

inline Vec3 primitive3(const Vec3& v) {
    const std::int64_t g = std::gcd(std::gcd(v.x, v.y), v.z);
    return g == 0 ? v : Vec3{v.x / g, v.y / g, v.z / g};
}

} // namespace detail

/// The unique bounded 2-face of a smooth tropical quadric and the two
/// directions of the tropical lines it carries.
struct BoundedFace {
    std::vector<Point3> vertices; // convex polygon, cyclic order
    Vec3 normal;                  // a − b for the interior edge ab of the triangulation
    Vec3 u1;
    Vec3 u2;
    std::array<Vec3, 2> interior_edge;
};

inline BoundedFace quadric_bounded_face(const TropicalQuadric& q) {
    const auto& terms = q.terms();
    const std::size_t n = terms.size();
    // upper hull of the lifted points (m, h_m): every facet must be a unimodular simplex
    std::vector<std::array<std::size_t, 4>> cells;
    std::array<std::size_t, 4> idx{};
    for (idx[0] = 0; idx[0] < n; ++idx[0]) {
        for (idx[1] = idx[0] + 1; idx[1] < n; ++idx[1]) {
            for (idx[2] = idx[1] + 1; idx[2] < n; ++idx[2]) {
                for (idx[3] = idx[2] + 1; idx[3] < n; ++idx[3]) {
                    const Vec3& m0 = terms[idx[0]].exponent;
                    const Vec3 a = terms[idx[1]].exponent - m0;
                    const Vec3 b = terms[idx[2]].exponent - m0;
                    const Vec3 c = terms[idx[3]].exponent - m0;
                    const std::int64_t det = det3(a, b, c);
                    if (det == 0) continue;
                    // affine function g(m) = h0 + x·(m − m0) through the four lifted points
                    const auto x = detail::solve_linear(
                        {{{Rational(a.x), Rational(a.y), Rational(a.z)},
                          {Rational(b.x), Rational(b.y), Rational(b.z)},
                          {Rational(c.x), Rational(c.y), Rational(c.z)}}},
                        {terms[idx[1]].height - terms[idx[0]].height, terms[idx[2]].height - terms[idx[0]].height,
                         terms[idx[3]].height - terms[idx[0]].height});
                    bool upper = true;
                    bool flat = false;
                    for (std::size_t k = 0; k < n && upper; ++k) {
                        if (std::find(idx.begin(), idx.end(), k) != idx.end()) continue;
                        const Vec3 d = terms[k].exponent - m0;
                        const Rational g = terms[idx[0]].height + x->x * d.x + x->y * d.y + x->z * d.z;
                        if (terms[k].height > g) upper = false;
                        if (terms[k].height == g) flat = true;
                    }
                    if (!upper) continue;
                    if (flat || (det != 1 && det != -1)) throw DomainError("quadric is not smooth");
                    cells.push_back(idx);
                }
            }
        }
    }
    if (cells.size() != 8) throw DomainError("quadric is not smooth");
    // the only possible interior edges join midpoints of opposite edges of 2Δ3
    const std::array<std::array<Vec3, 2>, 3> diagonals{{{Vec3{1, 0, 0}, Vec3{0, 1, 1}},
                                                        {Vec3{0, 1, 0}, Vec3{1, 0, 1}},
                                                        {Vec3{0, 0, 1}, Vec3{1, 1, 0}}}};
    const auto index_of = [&](const Vec3& e) {
        for (std::size_t i = 0; i < n; ++i) {
            if (terms[i].exponent == e) return i;
        }
        throw InternalError("missing monomial");
    };
    BoundedFace face;
    std::vector<std::array<std::size_t, 4>> around;
    for (const auto& d : diagonals) {
        const std::size_t ia = index_of(d[0]);
        const std::size_t ib = index_of(d[1]);
        std::vector<std::array<std::size_t, 4>> hit;
        for (const auto& c : cells) {
            if (std::find(c.begin(), c.end(), ia) != c.end() && std::find(c.begin(), c.end(), ib) != c.end()) {
                hit.push_back(c);
            }
        }
        if (hit.empty()) continue;
        if (!around.empty()) throw InternalError("triangulation has two interior edges");
        around = hit;
        face.interior_edge = d;
    }
    if (around.empty()) throw InternalError("triangulation has no interior edge");
    face.normal = face.interior_edge[0] - face.interior_edge[1];
    std::vector<Vec3> us;
    for (const auto& u : {Vec3{1, 1, 0}, Vec3{1, 0, 1}, Vec3{0, 1, 1}}) {
        if (dot(u, face.normal) == 0) us.push_back(u);
    }
    if (us.size() != 2) throw InternalError("bounded face has no line directions");
    face.u1 = us[0];
    face.u2 = us[1];
    // dual vertices: all four monomials of a cell tie
    std::vector<Point3> pts;
    for (const auto& c : around) {
        const Vec3& m0 = terms[c[0]].exponent;
        detail::Mat3 m;
        Point3 rhs;
        for (int r = 0; r < 3; ++r) {
            const Vec3 d = terms[c[static_cast<std::size_t>(r + 1)]].exponent - m0;
            m[static_cast<std::size_t>(r)] = {Rational(d.x), Rational(d.y), Rational(d.z)};
            rhs[r] = terms[c[0]].height - terms[c[static_cast<std::size_t>(r + 1)]].height;
        }
        pts.push_back(*detail::solve_linear(m, rhs));
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    // cyclic order by angle in the (u1, u2) chart around the centroid
    Point3 centre;
    for (const auto& p : pts) centre = centre + p;
    centre = Rational(1, static_cast<std::int64_t>(pts.size())) * centre;
    const auto chart = [&](const Point3& p) {
        const auto c = detail::solve_linear(detail::columns(face.u1, face.u2, face.normal), p - centre);
        return Point2{c->x, c->y};
    };
    const auto half = [](const Point2& v) { return v.y.sign() > 0 || (v.y.is_zero() && v.x.sign() > 0) ? 0 : 1; };
    std::sort(pts.begin(), pts.end(), [&](const Point3& a, const Point3& b) {
        const Point2 pa = chart(a);
        const Point2 pb = chart(b);
        if (half(pa) != half(pb)) return half(pa) < half(pb);
        return (pa.x * pb.y - pa.y * pb.x).sign() > 0;
    });
    face.vertices = pts;
    return face;
}

/// Affine map from a rectangle of R² into the bounded face: φ(x, y) =
/// base + μ((x − x0)·u1 + (y − y0)·u2) with μ = scale / max(width, height),
/// so the rectangle lands in base + [0, scale]·u1 + [0, scale]·u2.
struct LiftMap {
    BoundedFace face;
    Point3 base;
    Vec3 u1;
    Vec3 u2;
    Rational scale;
    Point2 rect_lo;
    Point2 rect_hi;
    // ends attached past the face to rays along +u1, −u1, +u2, −u2
    std::array<std::array<Vec3, 2>, 4> ends;

    [[nodiscard]] Rational factor() const {
        const Rational side = max(rect_hi.x - rect_lo.x, rect_hi.y - rect_lo.y);
        return side.sign() > 0 ? scale / side : scale;
    }
    [[nodiscard]] Point3 operator()(const Point2& r) const {
        const Rational f = factor();
        return base + (f * (r.x - rect_lo.x)) * u1 + (f * (r.y - rect_lo.y)) * u2;
    }
    [[nodiscard]] Vec3 direction(const Vec2& d) const { return d.x * u1 + d.y * u2; }
};

namespace detail {

/// Face coordinates (α, β) with p = face.vertices[0] + α·u1 + β·u2.
inline Point2 face_chart(const BoundedFace& f, const Point3& p) {
    const auto c = solve_linear(columns(f.u1, f.u2, f.normal), p - f.vertices.front());
    return {c->x, c->y};
}

/// Whether q is inside the convex polygon (strictly when `strict`).
inline bool in_polygon(const std::vector<Point2>& poly, const Point2& q, bool strict) {
    int orient = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point2 a = poly[i];
        const Point2 b = poly[(i + 1) % poly.size()];
        const int s = ((b.x - a.x) * (q.y - a.y) - (b.y - a.y) * (q.x - a.x)).sign();
        if (s == 0) {
            if (strict) return false;
            continue;
        }
        if (orient == 0) orient = s;
        if (s != orient) return false;
    }
    return true;
}

/// Ends attached past the face to a ray along u = e_s + e_t: e0 and −e_r;
/// along −u: −e_s and −e_t.
inline std::array<std::array<Vec3, 2>, 2> end_pairs(const Vec3& u) {
    const std::array<Vec3, 3> e{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
    std::vector<Vec3> in;
    Vec3 out;
    for (int i = 0; i < 3; ++i) {
        if (u[i] != 0) {
            in.push_back(e[static_cast<std::size_t>(i)]);
        } else {
            out = e[static_cast<std::size_t>(i)];
        }
    }
    return {{{Vec3{1, 1, 1}, -out}, {-in[0], -in[1]}}};
}

} // namespace detail

/// Lift map for the given rectangle: a square parallelogram centred in the
/// bounded face.
inline LiftMap make_lift_map(const TropicalQuadric& q, const Point2& lo, const Point2& hi) {
    if (hi.x < lo.x || hi.y < lo.y) throw DomainError("empty rectangle");
    LiftMap m;
    m.face = quadric_bounded_face(q);
    m.u1 = m.face.u1;
    m.u2 = m.face.u2;
    m.rect_lo = lo;
    m.rect_hi = hi;
    std::vector<Point2> poly;
    for (const auto& v : m.face.vertices) poly.push_back(detail::face_chart(m.face, v));
    Point2 c;
    for (const auto& p : poly) c = c + p;
    c = Rational(1, static_cast<std::int64_t>(poly.size())) * c;
    Rational side(1);
    for (int iter = 0;; ++iter) {
        if (iter > 60) throw InternalError("bounded face is degenerate");
        const Rational h = side / Rational(2);
        const std::array<Point2, 4> corners{Point2{c.x - h, c.y - h}, Point2{c.x + h, c.y - h},
                                            Point2{c.x + h, c.y + h}, Point2{c.x - h, c.y + h}};
        if (std::all_of(corners.begin(), corners.end(), [&](const Point2& p) { return detail::in_polygon(poly, p, true); })) {
            m.scale = side;
            m.base = m.face.vertices.front() + (c.x - h) * m.u1 + (c.y - h) * m.u2;
            break;
        }
        side = side / Rational(2);
    }
    const auto p1 = detail::end_pairs(m.u1);
    const auto p2 = detail::end_pairs(m.u2);
    m.ends = {p1[0], p1[1], p2[0], p2[1]};
    return m;
}

/// Lift map whose rectangle is the bounding box of the given points.
inline LiftMap make_lift_map(const TropicalQuadric& q, const std::vector<Point2>& cover) {
    if (cover.empty()) throw DomainError("nothing to cover");
    Point2 lo = cover.front();
    Point2 hi = cover.front();
    for (const auto& p : cover) {
        lo = {min(lo.x, p.x), min(lo.y, p.y)};
        hi = {max(hi.x, p.x), max(hi.y, p.y)};
    }
    return make_lift_map(q, lo, hi);
}

struct SpaceEdge {
    bool ray = false;
    int from = -1;
    int to = -1; // −1 for rays
    Point3 start;
    Point3 end; // segments only
    Vec3 direction; // primitive
    int weight = 1;
    Rational length; // lattice length, segments only
};

struct SpaceCurve {
    std::vector<Point3> vertices;
    std::vector<SpaceEdge> edges;
};

inline bool is_balanced(const SpaceCurve& c) {
    std::vector<Vec3> sum(c.vertices.size());
    for (const auto& e : c.edges) {
        sum[static_cast<std::size_t>(e.from)] = sum[static_cast<std::size_t>(e.from)] + e.weight * e.direction;
        if (!e.ray) sum[static_cast<std::size_t>(e.to)] = sum[static_cast<std::size_t>(e.to)] - e.weight * e.direction;
    }
    return std::all_of(sum.begin(), sum.end(), [](const Vec3& v) { return v == Vec3{}; });
}

/// Weighted count of unbounded ends per direction.
inline std::map<Vec3, int> end_counts(const SpaceCurve& c) {
    std::map<Vec3, int> out;
    for (const auto& e : c.edges) {
        if (e.ray) out[e.direction] += e.weight;
    }
    return out;
}

/// Lift of a (d,d)-curve whose vertices lie in the rectangle of φ.
inline SpaceCurve lift_curve(const PlaneCurve& c, const LiftMap& phi) {
    const auto prof = degree_profile(c);
    if (!prof.bidegree || prof.d1 != prof.d2) throw DomainError("curve is not of bidegree (d,d)");
    for (const auto& v : c.vertices) {
        if (v.x < phi.rect_lo.x || v.x > phi.rect_hi.x || v.y < phi.rect_lo.y || v.y > phi.rect_hi.y) {
            throw DomainError("bounded edge outside the rectangle");
        }
    }
    SpaceCurve out;
    std::map<Point3, int> ids;
    const auto vertex = [&](const Point3& p) {
        const auto [it, fresh] = ids.emplace(p, static_cast<int>(out.vertices.size()));
        if (fresh) out.vertices.push_back(p);
        return it->second;
    };
    for (const auto& v : c.vertices) vertex(phi(v));
    std::vector<Point2> poly;
    for (const auto& v : phi.face.vertices) poly.push_back(detail::face_chart(phi.face, v));
    const Rational f = phi.factor();
    for (const auto& e : c.edges) {
        if (e.kind == EdgeKind::line) throw DomainError("curve has a line component");
        const Vec3 d = phi.direction(e.direction);
        const Point3 s = phi(e.start);
        if (e.kind == EdgeKind::segment) {
            SpaceEdge se;
            se.from = vertex(s);
            se.start = s;
            se.end = phi(e.end);
            se.to = vertex(se.end);
            se.direction = d;
            se.weight = e.weight;
            se.length = f * e.length();
            out.edges.push_back(se);
            continue;
        }
        int slot = -1;
        if (e.direction == Vec2{1, 0}) slot = 0;
        if (e.direction == Vec2{-1, 0}) slot = 1;
        if (e.direction == Vec2{0, 1}) slot = 2;
        if (e.direction == Vec2{0, -1}) slot = 3;
        if (slot < 0) throw DomainError("end direction is not ±e1 or ±e2");
        // walk to the boundary of the face
        const Point2 a = detail::face_chart(phi.face, s);
        std::optional<Rational> exit;
        for (std::size_t i = 0; i < poly.size(); ++i) {
            const Point2 p = poly[i];
            const Point2 q = poly[(i + 1) % poly.size()];
            const Rational den = (q.x - p.x) * Rational(e.direction.y) - (q.y - p.y) * Rational(e.direction.x);
            if (den.is_zero()) continue;
            // a + t·dir on the line pq
            const Rational t = ((q.x - p.x) * (a.y - p.y) - (q.y - p.y) * (a.x - p.x)) / -den;
            if (t.sign() <= 0) continue;
            if (!exit || t < *exit) exit = t;
        }
        if (!exit) throw InternalError("ray does not leave the bounded face");
        const Point3 b = s + *exit * d;
        SpaceEdge se;
        se.from = vertex(s);
        se.start = s;
        se.end = b;
        se.to = vertex(b);
        se.direction = d;
        se.weight = e.weight;
        se.length = *exit;
        out.edges.push_back(se);
        for (const auto& u : phi.ends[static_cast<std::size_t>(slot)]) {
            SpaceEdge r;
            r.ray = true;
            r.from = se.to;
            r.start = b;
            r.direction = u;
            r.weight = e.weight;
            out.edges.push_back(r);
        }
    }
    return out;
}

namespace detail {

/// Linear constraint n·v (= or ≤) r in the unknown plane vertex v.
struct Constraint {
    std::array<Rational, 3> n;
    Rational r;
};

inline Rational form_at(const std::array<Rational, 3>& n, const Point3& v) { return n[0] * v.x + n[1] * v.y + n[2] * v.z; }

enum class SolutionSet { empty, point, many };

/// Classifies {v : eqs hold, ineqs ≤ hold}; `point` receives the unique solution.
inline SolutionSet classify_polyhedron(const std::vector<Constraint>& eqs, const std::vector<Constraint>& ineqs,
                                       Point3& point) {
    // reduced row echelon form of the equalities
    std::vector<Constraint> rows = eqs;
    std::vector<int> pivots;
    std::size_t r = 0;
    for (int c = 0; c < 3 && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv].n[static_cast<std::size_t>(c)].is_zero()) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        const Rational inv = Rational(1) / rows[r].n[static_cast<std::size_t>(c)];
        for (auto& x : rows[r].n) x = x * inv;
        rows[r].r = rows[r].r * inv;
        for (std::size_t k = 0; k < rows.size(); ++k) {
            if (k == r) continue;
            const Rational f = rows[k].n[static_cast<std::size_t>(c)];
            if (f.is_zero()) continue;
            for (int j = 0; j < 3; ++j) rows[k].n[static_cast<std::size_t>(j)] -= f * rows[r].n[static_cast<std::size_t>(j)];
            rows[k].r -= f * rows[r].r;
        }
        pivots.push_back(c);
        ++r;
    }
    for (std::size_t k = r; k < rows.size(); ++k) {
        if (!rows[k].r.is_zero()) return SolutionSet::empty;
    }
    // v = base + Σ t_j·dir_j over the free columns
    Point3 base;
    for (std::size_t k = 0; k < pivots.size(); ++k) base[pivots[k]] = rows[k].r;
    std::vector<Point3> dirs;
    for (int c = 0; c < 3; ++c) {
        if (std::find(pivots.begin(), pivots.end(), c) != pivots.end()) continue;
        Point3 d;
        d[c] = Rational(1);
        for (std::size_t k = 0; k < pivots.size(); ++k) d[pivots[k]] = -rows[k].n[static_cast<std::size_t>(c)];
        dirs.push_back(d);
    }
    const auto feasible = [&](const Point3& v) {
        return std::all_of(ineqs.begin(), ineqs.end(), [&](const Constraint& q) { return form_at(q.n, v) <= q.r; });
    };
    if (dirs.empty()) {
        if (!feasible(base)) return SolutionSet::empty;
        point = base;
        return SolutionSet::point;
    }
    // constraints in the parameters t: a·t ≤ b
    struct Param {
        std::vector<Rational> a;
        Rational b;
    };
    std::vector<Param> ps;
    for (const auto& q : ineqs) {
        Param p;
        for (const auto& d : dirs) p.a.push_back(form_at(q.n, d));
        p.b = q.r - form_at(q.n, base);
        if (std::all_of(p.a.begin(), p.a.end(), [](const Rational& x) { return x.is_zero(); })) {
            if (p.b.sign() < 0) return SolutionSet::empty;
            continue;
        }
        ps.push_back(std::move(p));
    }
    if (dirs.size() == 1) {
        std::optional<Rational> lo;
        std::optional<Rational> hi;
        for (const auto& p : ps) {
            const Rational t = p.b / p.a[0];
            if (p.a[0].sign() > 0) {
                if (!hi || t < *hi) hi = t;
            } else if (!lo || t > *lo) {
                lo = t;
            }
        }
        if (lo && hi && *hi < *lo) return SolutionSet::empty;
        if (lo && hi && *hi == *lo) {
            point = base + *lo * dirs[0];
            return SolutionSet::point;
        }
        return SolutionSet::many;
    }
    if (dirs.size() > 2) return SolutionSet::many; // no equalities at all
    // two parameters: vertices of the polygon
    const auto at = [&](const Rational& t0, const Rational& t1) { return base + t0 * dirs[0] + t1 * dirs[1]; };
    const auto ok = [&](const Rational& t0, const Rational& t1) {
        return std::all_of(ps.begin(), ps.end(), [&](const Param& p) { return p.a[0] * t0 + p.a[1] * t1 <= p.b; });
    };
    bool all_parallel = true;
    for (const auto& p : ps) {
        if (p.a[0] * ps.front().a[1] != p.a[1] * ps.front().a[0]) all_parallel = false;
    }
    if (ps.empty() || all_parallel) {
        // a strip or half-plane, either empty or infinite: probe along the common normal
        if (ps.empty()) return SolutionSet::many;
        const auto& n0 = ps.front().a;
        std::optional<Rational> lo;
        std::optional<Rational> hi;
        for (const auto& p : ps) {
            const Rational k = p.a[0].is_zero() ? p.a[1] / n0[1] : p.a[0] / n0[0]; // p.a = k·n0
            const Rational s = p.b / k;
            if (k.sign() > 0) {
                if (!hi || s < *hi) hi = s;
            } else if (!lo || s > *lo) {
                lo = s;
            }
        }
        if (lo && hi && *hi < *lo) return SolutionSet::empty;
        return SolutionSet::many;
    }
    std::set<std::pair<Rational, Rational>> verts;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        for (std::size_t j = i + 1; j < ps.size(); ++j) {
            const Rational det = ps[i].a[0] * ps[j].a[1] - ps[i].a[1] * ps[j].a[0];
            if (det.is_zero()) continue;
            const Rational t0 = (ps[i].b * ps[j].a[1] - ps[i].a[1] * ps[j].b) / det;
            const Rational t1 = (ps[i].a[0] * ps[j].b - ps[i].b * ps[j].a[0]) / det;
            if (ok(t0, t1)) verts.emplace(t0, t1);
        }
    }
    if (verts.empty()) return SolutionSet::empty;
    if (verts.size() > 1) return SolutionSet::many;
    const auto [t0, t1] = *verts.begin();
    // a single vertex: the polygon is that point unless some edge direction leaves it
    for (const auto& p : ps) {
        if (p.a[0] * t0 + p.a[1] * t1 != p.b) continue;
        for (const int s : {1, -1}) {
            const Rational d0 = Rational(s) * p.a[1];
            const Rational d1 = Rational(-s) * p.a[0];
            const bool leaves = std::all_of(ps.begin(), ps.end(), [&](const Param& q) {
                return q.a[0] * t0 + q.a[1] * t1 != q.b || (q.a[0] * d0 + q.a[1] * d1).sign() <= 0;
            });
            if (leaves) return SolutionSet::many;
        }
    }
    point = at(t0, t1);
    return SolutionSet::point;
}

} // namespace detail

/// The tropical plane through three points, by case analysis over the pair
/// of terms of max(0, y1, y2, y3) that ties at each point (6³ cases).
inline TropicalPlane plane_through(const Point3& p1, const Point3& p2, const Point3& p3) {
    const std::array<Point3, 3> pts{p1, p2, p3};
    const std::array<std::pair<int, int>, 6> pairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
    // term k of the point p as a function of v: k = 0 → 0, else p_k − v_k
    const auto term = [](const Point3& p, int k) {
        detail::Constraint c; // value = c.r − c.n·v
        if (k > 0) {
            c.n[static_cast<std::size_t>(k - 1)] = Rational(1);
            c.r = p[k - 1];
        }
        return c;
    };
    std::vector<Point3> found;
    bool infinite = false;
    for (int mask = 0; mask < 216; ++mask) {
        std::vector<detail::Constraint> eqs;
        std::vector<detail::Constraint> ineqs;
        int code = mask;
        for (const auto& p : pts) {
            const auto [a, b] = pairs[static_cast<std::size_t>(code % 6)];
            code /= 6;
            const auto ta = term(p, a);
            const auto tb = term(p, b);
            // ta = tb
            detail::Constraint e;
            for (std::size_t j = 0; j < 3; ++j) e.n[j] = ta.n[j] - tb.n[j];
            e.r = ta.r - tb.r;
            eqs.push_back(e);
            for (int k = 0; k < 4; ++k) {
                if (k == a || k == b) continue;
                // tk ≤ ta:  (tk.r − tk.n·v) ≤ (ta.r − ta.n·v)  ⇔  (ta.n − tk.n)·v ≤ ta.r − tk.r
                const auto tk = term(p, k);
                detail::Constraint q;
                for (std::size_t j = 0; j < 3; ++j) q.n[j] = ta.n[j] - tk.n[j];
                q.r = ta.r - tk.r;
                ineqs.push_back(q);
            }
        }
        Point3 v;
        switch (detail::classify_polyhedron(eqs, ineqs, v)) {
        case detail::SolutionSet::empty:
            break;
        case detail::SolutionSet::point:
            found.push_back(v);
            break;
        case detail::SolutionSet::many:
            infinite = true;
            break;
        }
    }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    if (infinite || found.size() > 1) throw DomainError("degenerate points: infinitely many tropical planes pass through them");
    if (found.empty()) throw DomainError("degenerate points: no tropical plane passes through them");
    TropicalPlane plane{found.front()};
    for (const auto& p : pts) {
        if (!plane.contains(p)) throw InternalError("plane misses an input point");
    }
    return plane;
}

namespace detail {

/// Closed parameter intervals of the edge lying in the plane; hi is empty
/// for an unbounded piece of a ray.
struct Piece {
    Rational lo;
    std::optional<Rational> hi;
};

inline std::vector<Piece> pieces_in_plane(const SpaceEdge& e, const TropicalPlane& pl) {
    // terms of the plane along the edge: f_k(t) = c_k + t·s_k
    std::array<Rational, 4> c{Rational(0), e.start.x - pl.vertex.x, e.start.y - pl.vertex.y, e.start.z - pl.vertex.z};
    std::array<Rational, 4> s{Rational(0), Rational(e.direction.x), Rational(e.direction.y), Rational(e.direction.z)};
    std::set<Rational> cuts{Rational(0)};
    if (!e.ray) cuts.insert(e.length);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i + 1; j < 4; ++j) {
            if (s[i] == s[j]) continue;
            const Rational t = (c[j] - c[i]) / (s[i] - s[j]);
            if (t.sign() > 0 && (e.ray || t < e.length)) cuts.insert(t);
        }
    }
    const auto at = [&](const Rational& t) { return e.start + t * e.direction; };
    const std::vector<Rational> ts(cuts.begin(), cuts.end());
    std::vector<Piece> out;
    const auto push = [&](const Rational& lo, const std::optional<Rational>& hi) {
        if (!out.empty() && out.back().hi && *out.back().hi == lo) {
            out.back().hi = hi;
            return;
        }
        out.push_back({lo, hi});
    };
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (pl.contains(at(ts[i]))) push(ts[i], ts[i]);
        if (i + 1 < ts.size()) {
            if (pl.contains(at(Rational(1, 2) * (ts[i] + ts[i + 1])))) push(ts[i], ts[i + 1]);
        } else if (e.ray && pl.contains(at(ts[i] + Rational(1)))) {
            push(ts[i], std::nullopt);
        }
    }
    return out;
}

} // namespace detail

/// Whether the whole edge lies in the plane.
inline bool plane_contains_edge(const TropicalPlane& pl, const SpaceEdge& e) {
    const auto ps = detail::pieces_in_plane(e, pl);
    if (ps.size() != 1 || !ps.front().lo.is_zero()) return false;
    return e.ray ? !ps.front().hi.has_value() : (ps.front().hi && *ps.front().hi == e.length);
}

inline bool plane_contains_curve(const TropicalPlane& pl, const SpaceCurve& c) {
    return std::all_of(c.edges.begin(), c.edges.end(), [&](const SpaceEdge& e) { return plane_contains_edge(pl, e); });
}

struct SpaceIntersectionPoint {
    Point3 point;
    int multiplicity = 0;
};

/// Generic perturbation of the plane vertex.
inline Point3 default_plane_perturbation() { return {Rational(1), Rational(29, 53), Rational(71, 97)}; }

/// Limit of Γ ∩ (Π + ε·w): edge against 2-cell crossings weighted by
/// weight·|det(d, g1, g2)|.
inline std::vector<SpaceIntersectionPoint> stable_intersection(const SpaceCurve& c, const TropicalPlane& pl,
                                                               const Point3& w = default_plane_perturbation()) {
    const auto& rays = plane_rays();
    std::map<Point3, int> acc;
    for (const auto& e : c.edges) {
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = i + 1; j < 4; ++j) {
                const std::int64_t det = det3(e.direction, rays[i], rays[j]);
                if (det == 0) continue;
                // start + t·d = v + ε·w + a·g1 + b·g2
                const auto m = detail::columns(e.direction, -rays[i], -rays[j]);
                const auto real = detail::solve_linear(m, pl.vertex - e.start);
                const auto eps = detail::solve_linear(m, w);
                const DualRational t{real->x, eps->x};
                const DualRational a{real->y, eps->y};
                const DualRational b{real->z, eps->z};
                if (t.sign() <= 0 || a.sign() <= 0 || b.sign() <= 0) continue;
                if (!e.ray && (DualRational{e.length, Rational(0)} - t).sign() <= 0) continue;
                acc[e.start + t.real * e.direction] += e.weight * static_cast<int>(det < 0 ? -det : det);
            }
        }
    }
    std::vector<SpaceIntersectionPoint> out;
    for (const auto& [p, m] : acc) out.push_back({p, m});
    return out;
}

/// Stable multiplicities grouped by connected component of Γ ∩ Π, descending.
inline std::vector<int> contact_partition(const SpaceCurve& c, const TropicalPlane& pl,
                                          const Point3& w = default_plane_perturbation()) {
    struct Seg {
        Point3 a;
        Point3 b;
        Point3 dir; // for containment tests
        bool ray;
    };
    std::vector<Seg> segs;
    for (const auto& e : c.edges) {
        for (const auto& p : detail::pieces_in_plane(e, pl)) {
            const Point3 a = e.start + p.lo * e.direction;
            const Point3 b = p.hi ? e.start + *p.hi * e.direction : a;
            segs.push_back({a, b, Rational(1) * e.direction, !p.hi.has_value()});
        }
    }
    const auto on = [](const Seg& s, const Point3& x) {
        const Point3 d = x - s.a;
        // x = a + t·dir with 0 ≤ t ≤ |b − a| (or unbounded)
        std::optional<Rational> t;
        for (int i = 0; i < 3; ++i) {
            if (s.dir[i].is_zero()) {
                if (!d[i].is_zero()) return false;
                continue;
            }
            const Rational ti = d[i] / s.dir[i];
            if (t && *t != ti) return false;
            t = ti;
        }
        if (!t) return true;
        if (t->sign() < 0) return false;
        if (s.ray) return true;
        const Point3 e = s.b - s.a;
        for (int i = 0; i < 3; ++i) {
            if (!s.dir[i].is_zero()) return *t <= e[i] / s.dir[i];
        }
        return true;
    };
    std::vector<int> parent(segs.size());
    std::iota(parent.begin(), parent.end(), 0);
    const std::function<int(int)> find = [&](int x) {
        return parent[static_cast<std::size_t>(x)] == x ? x : parent[static_cast<std::size_t>(x)] = find(parent[static_cast<std::size_t>(x)]);
    };
    for (std::size_t i = 0; i < segs.size(); ++i) {
        for (std::size_t j = i + 1; j < segs.size(); ++j) {
            if (on(segs[i], segs[j].a) || on(segs[i], segs[j].b) || on(segs[j], segs[i].a) || on(segs[j], segs[i].b)) {
                parent[static_cast<std::size_t>(find(static_cast<int>(i)))] = find(static_cast<int>(j));
            }
        }
    }
    std::map<int, int> weight;
    for (const auto& sp : stable_intersection(c, pl, w)) {
        int comp = -1;
        for (std::size_t i = 0; i < segs.size() && comp < 0; ++i) {
            if (on(segs[i], sp.point)) comp = find(static_cast<int>(i));
        }
        if (comp < 0) throw InternalError("stable intersection point off the set-theoretic intersection");
        weight[comp] += sp.multiplicity;
    }
    std::vector<int> out;
    for (const auto& [k, m] : weight) out.push_back(m);
    std::sort(out.rbegin(), out.rend());
    return out;
}

/// A plane through three points of the lifted conic that contains the whole conic.
inline TropicalPlane plane_containing(const SpaceCurve& conic) {
    std::vector<Point3> samples;
    for (const auto& e : conic.edges) {
        if (!e.ray) continue;
        for (const auto& t : {Rational(1), Rational(5, 3), Rational(7, 2)}) samples.push_back(e.start + t * e.direction);
    }
    for (std::size_t i = 0; i < samples.size(); ++i) {
        for (std::size_t j = i + 1; j < samples.size(); ++j) {
            for (std::size_t k = j + 1; k < samples.size(); ++k) {
                try {
                    const auto pl = plane_through(samples[i], samples[j], samples[k]);
                    if (plane_contains_curve(pl, conic)) return pl;
                } catch (const DomainError&) {
                }
            }
        }
    }
    throw InternalError("no plane through three points contains the conic");
}

struct LiftedTritangent {
    int class_index = -1; // position in the class list
    int theta_index = -1;
    OneOneCurve curve;
    TropicalPlane plane;
    std::vector<int> partition; // stable contact with the lifted sextic
};

/// One tritangent plane per class, or per sampled representative for a
/// family class. Each plane contains the lifted conic, and its stable contact
/// with the lifted sextic must reproduce the representative's partition.
inline std::vector<LiftedTritangent> tritangent_planes_of_lift(const PlaneCurve& c, const LiftMap& phi,
                                                               const std::vector<TritangentClass>& classes,
                                                               std::size_t max_family_samples = 5) {
    const SpaceCurve sextic = lift_curve(c, phi);
    std::vector<std::pair<int, const TritangentRepresentative*>> jobs;
    for (std::size_t k = 0; k < classes.size(); ++k) {
        const auto& reps = classes[k].representatives;
        const std::size_t take = classes[k].family ? std::min(reps.size(), max_family_samples) : 1;
        for (std::size_t i = 0; i < take; ++i) {
            // evenly spaced through the sorted representatives
            jobs.emplace_back(static_cast<int>(k), &reps[take == 1 ? 0 : i * (reps.size() - 1) / (take - 1)]);
        }
    }
    std::vector<LiftedTritangent> out(jobs.size());
    parallel_for(jobs.size(), [&](std::size_t i) {
        const auto& [k, rep] = jobs[i];
        LiftedTritangent t;
        t.class_index = k;
        t.theta_index = classes[static_cast<std::size_t>(k)].theta_index;
        t.curve = rep->curve;
        t.plane = plane_containing(lift_curve(one_one_curve(rep->curve), phi));
        t.partition = contact_partition(sextic, t.plane);
        if (t.partition != rep->certificate.partition) throw InternalError("lifted plane changes the contact partition");
        out[i] = std::move(t);
    });
    return out;
}

/// Points the rectangle of a lift map must cover: the vertices of C and of
/// every representative.
inline std::vector<Point2> lift_cover(const PlaneCurve& c, const std::vector<TritangentClass>& classes) {
    std::vector<Point2> pts = c.vertices;
    for (const auto& cls : classes) {
        for (const auto& r : cls.representatives) {
            const auto l = one_one_curve(r.curve);
            pts.insert(pts.end(), l.vertices.begin(), l.vertices.end());
        }
    }
    return pts;
}

} // namespace tritrop
