// Tropical plane curves in the max-plus convention: F(X) = max_a (h_a + a·X).
// Heights are negated valuations; min-plus data must be negated first.
#pragma once

#include "tritrop/graph.hpp"
#include "tritrop/rational.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tritrop {

struct Point2 {
    Rational x;
    Rational y;

    friend Point2 operator+(const Point2& a, const Point2& b) { return {a.x + b.x, a.y + b.y}; }
    friend Point2 operator-(const Point2& a, const Point2& b) { return {a.x - b.x, a.y - b.y}; }
    friend Point2 operator*(const Rational& s, const Point2& p) { return {s * p.x, s * p.y}; }
    friend bool operator==(const Point2&, const Point2&) = default;
    friend std::strong_ordering operator<=>(const Point2& a, const Point2& b) {
        if (auto c = a.x <=> b.x; c != 0) return c;
        return a.y <=> b.y;
    }
};

/// Integer vector; used for lattice points and primitive directions.
struct Vec2 {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
    friend bool operator==(const Vec2&, const Vec2&) = default;
    friend auto operator<=>(const Vec2&, const Vec2&) = default;
};

inline std::int64_t cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

inline Point2 operator+(const Point2& p, const Vec2& v) { return {p.x + v.x, p.y + v.y}; }
inline Point2 operator*(const Rational& s, const Vec2& v) { return {s * v.x, s * v.y}; }

/// v divided by the gcd of its entries. The zero vector is returned unchanged.
inline Vec2 primitive(const Vec2& v) {
    const std::int64_t g = std::gcd(v.x, v.y);
    return g == 0 ? v : Vec2{v.x / g, v.y / g};
}

inline std::int64_t lattice_length(const Vec2& v) { return std::gcd(v.x, v.y); }

struct Term {
    Vec2 exponent;
    Rational height;
    friend bool operator==(const Term&, const Term&) = default;
};

class TropicalPolynomial {
  public:
    TropicalPolynomial() = default;
    explicit TropicalPolynomial(std::vector<Term> terms) : terms_(std::move(terms)) {
        if (terms_.empty()) throw DomainError("empty support");
        std::set<Vec2> seen;
        for (const auto& t : terms_) {
            if (!seen.insert(t.exponent).second) throw DomainError("repeated support point");
        }
    }

    [[nodiscard]] const std::vector<Term>& terms() const noexcept { return terms_; }
    [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }
    [[nodiscard]] const Term& operator[](std::size_t i) const { return terms_.at(i); }

    [[nodiscard]] Rational value(const Point2& x) const {
        Rational best = terms_.front().height + x.x * terms_.front().exponent.x + x.y * terms_.front().exponent.y;
        for (const auto& t : terms_) best = max(best, t.height + x.x * t.exponent.x + x.y * t.exponent.y);
        return best;
    }

    /// Indices of the terms attaining the maximum at x.
    [[nodiscard]] std::vector<int> active(const Point2& x) const {
        const Rational best = value(x);
        std::vector<int> out;
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            const auto& t = terms_[i];
            if (t.height + x.x * t.exponent.x + x.y * t.exponent.y == best) out.push_back(static_cast<int>(i));
        }
        return out;
    }

    friend bool operator==(const TropicalPolynomial&, const TropicalPolynomial&) = default;

  private:
    std::vector<Term> terms_;
};

enum class EdgeKind { segment, ray, line };

struct CurveEdge {
    EdgeKind kind = EdgeKind::segment;
    int from = -1; // curve vertex at start, -1 for lines
    int to = -1;   // curve vertex at the far end of a segment
    Point2 start;
    Point2 end;    // segments only
    Vec2 direction; // primitive, from start towards end / along the ray
    int weight = 1;
    std::array<int, 2> dual{}; // support indices of the dual edge
    std::array<int, 2> cells{-1, -1};

    /// Lattice length of a segment.
    [[nodiscard]] Rational length() const {
        return direction.x != 0 ? (end.x - start.x) / Rational(direction.x) : (end.y - start.y) / Rational(direction.y);
    }
};

/// A 2-cell of the regular subdivision, dual to a curve vertex.
struct Cell {
    std::vector<int> corners; // support indices, counter-clockwise
    std::vector<int> marked;  // every support index lying on the lifted face
};

struct PlaneCurve {
    TropicalPolynomial polynomial;
    std::vector<Point2> vertices; // vertices[i] is dual to cells[i]
    std::vector<Cell> cells;
    std::vector<CurveEdge> edges;
};

namespace detail {

/// Counter-clockwise convex hull corners of the given support indices.
inline std::vector<int> hull_corners(const TropicalPolynomial& p, std::vector<int> idx) {
    const auto at = [&](int i) { return p[static_cast<std::size_t>(i)].exponent; };
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return at(a) < at(b); });
    if (idx.size() < 3) return idx;
    std::vector<int> h(2 * idx.size());
    std::size_t k = 0;
    for (const int i : idx) {
        while (k >= 2 && cross(at(h[k - 1]) - at(h[k - 2]), at(i) - at(h[k - 2])) <= 0) --k;
        h[k++] = i;
    }
    const std::size_t lower = k + 1;
    for (auto it = idx.rbegin() + 1; it != idx.rend(); ++it) {
        while (k >= lower && cross(at(h[k - 1]) - at(h[k - 2]), at(*it) - at(h[k - 2])) <= 0) --k;
        h[k++] = *it;
    }
    h.resize(k - 1);
    return h;
}

/// Curve made of parallel lines for a collinear support.
inline PlaneCurve collinear_curve(const TropicalPolynomial& p) {
    const Vec2 o = p[0].exponent;
    Vec2 dir{};
    for (const auto& t : p.terms()) {
        if (t.exponent != o) dir = primitive(t.exponent - o);
    }
    // Position along dir, then the 1-dimensional upper hull of (position, height).
    const auto pos_of = [&](int k) {
        const Vec2 d = p[static_cast<std::size_t>(k)].exponent - o;
        return dir.x != 0 ? d.x / dir.x : d.y / dir.y;
    };
    std::vector<int> order(p.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return pos_of(a) < pos_of(b); });
    const auto h = [&](int k) { return p[static_cast<std::size_t>(k)].height; };
    std::vector<int> hull;
    for (const int i : order) {
        // drop the last hull point while it lies on or below the chord to i
        while (hull.size() >= 2) {
            const int i1 = hull[hull.size() - 2];
            const int i2 = hull.back();
            const Rational lhs = (h(i2) - h(i1)) * Rational(pos_of(i) - pos_of(i1));
            const Rational rhs = (h(i) - h(i1)) * Rational(pos_of(i2) - pos_of(i1));
            if (lhs > rhs) break;
            hull.pop_back();
        }
        hull.push_back(i);
    }
    PlaneCurve c;
    c.polynomial = p;
    const Vec2 normal{-dir.y, dir.x};
    for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
        const auto& a = p[static_cast<std::size_t>(hull[k])];
        const auto& b = p[static_cast<std::size_t>(hull[k + 1])];
        const Vec2 v = b.exponent - a.exponent;
        // h_a + a·X = h_b + b·X, i.e. v·X = h_a − h_b
        const Rational t = (a.height - b.height) / Rational(v.x * v.x + v.y * v.y);
        CurveEdge e;
        e.kind = EdgeKind::line;
        e.start = t * v;
        e.direction = normal;
        e.weight = static_cast<int>(lattice_length(v));
        e.dual = {hull[k], hull[k + 1]};
        c.edges.push_back(e);
    }
    return c;
}

} // namespace detail

/// Corner locus of the polynomial together with its dual regular subdivision.
inline PlaneCurve curve_from_polynomial(const TropicalPolynomial& p) {
    const std::size_t n = p.size();
    if (n == 0) throw DomainError("empty support");
    const auto at = [&](std::size_t i) { return p[i].exponent; };
    bool two_dim = false;
    bool one_dim = false;
    for (std::size_t i = 1; i < n && !two_dim; ++i) {
        if (at(i) != at(0)) one_dim = true;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (cross(at(i) - at(0), at(j) - at(0)) != 0) {
                two_dim = true;
                break;
            }
        }
    }
    if (!one_dim) throw DomainError("degenerate support");
    if (!two_dim) return detail::collinear_curve(p);

    // Upper faces of the lifted point set, keyed by their dual vertex.
    std::map<Point2, Cell> faces;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                const Vec2 u = at(j) - at(i);
                const Vec2 v = at(k) - at(i);
                const std::int64_t det = cross(u, v);
                if (det == 0) continue;
                // plane z = c + α·a: α·u = Δh_j, α·v = Δh_k
                const Rational dj = p[j].height - p[i].height;
                const Rational dk = p[k].height - p[i].height;
                const Rational ax = (dj * v.y - dk * u.y) / Rational(det);
                const Rational ay = (dk * u.x - dj * v.x) / Rational(det);
                const Point2 dual{-ax, -ay};
                if (faces.count(dual) != 0) continue;
                const Rational c = p[i].height - ax * at(i).x - ay * at(i).y;
                bool upper = true;
                std::vector<int> on;
                for (std::size_t m = 0; m < n && upper; ++m) {
                    const Rational z = c + ax * at(m).x + ay * at(m).y;
                    if (p[m].height > z) upper = false;
                    if (p[m].height == z) on.push_back(static_cast<int>(m));
                }
                if (!upper) continue;
                Cell cell;
                cell.marked = on;
                cell.corners = detail::hull_corners(p, on);
                faces.emplace(dual, std::move(cell));
            }
        }
    }
    PlaneCurve c;
    c.polynomial = p;
    for (auto& [x, cell] : faces) {
        c.vertices.push_back(x);
        c.cells.push_back(std::move(cell));
    }
    // Each cell edge is shared by two cells (bounded edge) or one (ray).
    std::map<std::pair<int, int>, std::vector<int>> owners;
    for (std::size_t f = 0; f < c.cells.size(); ++f) {
        const auto& k = c.cells[f].corners;
        for (std::size_t s = 0; s < k.size(); ++s) {
            const int a = k[s];
            const int b = k[(s + 1) % k.size()];
            owners[{std::min(a, b), std::max(a, b)}].push_back(static_cast<int>(f));
        }
    }
    for (const auto& [key, fs] : owners) {
        const Vec2 v = at(static_cast<std::size_t>(key.second)) - at(static_cast<std::size_t>(key.first));
        const Vec2 normal = primitive(Vec2{v.y, -v.x});
        CurveEdge e;
        e.weight = static_cast<int>(lattice_length(v));
        e.dual = {key.first, key.second};
        if (fs.size() == 2) {
            int a = fs[0];
            int b = fs[1];
            const Point2 d = c.vertices[static_cast<std::size_t>(b)] - c.vertices[static_cast<std::size_t>(a)];
            const Rational t = normal.x != 0 ? d.x / Rational(normal.x) : d.y / Rational(normal.y);
            e.direction = t.sign() > 0 ? normal : -normal;
            e.kind = EdgeKind::segment;
            e.from = a;
            e.to = b;
            e.start = c.vertices[static_cast<std::size_t>(a)];
            e.end = c.vertices[static_cast<std::size_t>(b)];
            e.cells = {a, b};
        } else if (fs.size() == 1) {
            const int f = fs[0];
            // outward normal of the cell edge
            const auto& k = c.cells[static_cast<std::size_t>(f)].corners;
            Vec2 centroid_side{};
            for (const int m : k) {
                if (m != key.first && m != key.second) {
                    centroid_side = at(static_cast<std::size_t>(m)) - at(static_cast<std::size_t>(key.first));
                    break;
                }
            }
            const std::int64_t dot = normal.x * centroid_side.x + normal.y * centroid_side.y;
            e.direction = dot < 0 ? normal : -normal;
            e.kind = EdgeKind::ray;
            e.from = f;
            e.start = c.vertices[static_cast<std::size_t>(f)];
            e.cells = {f, -1};
        } else {
            throw InternalError("subdivision edge with more than two cells");
        }
        c.edges.push_back(e);
    }
    return c;
}

/// Weighted primitive directions sum to zero at every vertex.
inline bool is_balanced(const PlaneCurve& c) {
    std::vector<Vec2> sum(c.vertices.size());
    for (const auto& e : c.edges) {
        if (e.kind == EdgeKind::line) continue;
        auto& s = sum[static_cast<std::size_t>(e.from)];
        s = s + Vec2{e.direction.x * e.weight, e.direction.y * e.weight};
        if (e.kind == EdgeKind::segment) {
            auto& t = sum[static_cast<std::size_t>(e.to)];
            t = t - Vec2{e.direction.x * e.weight, e.direction.y * e.weight};
        }
    }
    return std::all_of(sum.begin(), sum.end(), [](const Vec2& v) { return v == Vec2{}; });
}

/// Degree d (ends −e1, −e2, e1+e2) or bi-degree (d1, d2) with d1 ends in
/// each of ±e2 and d2 ends in each of ±e1.
struct DegreeProfile {
    bool bidegree = false;
    int d1 = 0;
    int d2 = 0;

    friend bool operator==(const DegreeProfile&, const DegreeProfile&) = default;
    [[nodiscard]] std::string str() const {
        return bidegree ? "bidegree " + std::to_string(d1) + " " + std::to_string(d2) : "degree " + std::to_string(d1);
    }
};

/// Weighted count of unbounded ends per primitive direction; lines count as two ends.
inline std::map<Vec2, int> end_directions(const PlaneCurve& c) {
    std::map<Vec2, int> ends;
    for (const auto& e : c.edges) {
        if (e.kind == EdgeKind::ray) ends[e.direction] += e.weight;
        if (e.kind == EdgeKind::line) {
            ends[e.direction] += e.weight;
            ends[-e.direction] += e.weight;
        }
    }
    return ends;
}

inline DegreeProfile degree_profile(const PlaneCurve& c) {
    const auto ends = end_directions(c);
    const auto count = [&](Vec2 v) {
        const auto it = ends.find(v);
        return it == ends.end() ? 0 : it->second;
    };
    std::size_t seen = 0;
    const int a = count({-1, 0});
    const int b = count({0, -1});
    const int d = count({1, 1});
    seen = static_cast<std::size_t>((a > 0) + (b > 0) + (d > 0));
    if (d > 0 && a == d && b == d && seen == ends.size()) return {false, d, 0};
    const int east = count({1, 0});
    const int north = count({0, 1});
    seen = static_cast<std::size_t>((a > 0) + (b > 0) + (east > 0) + (north > 0));
    if (seen == ends.size() && !ends.empty() && a == east && b == north) return {true, b, a};
    throw DomainError("unsupported Newton polygon");
}

/// Every cell of the subdivision is a triangle of normalized area 1.
inline bool is_smooth(const PlaneCurve& c) {
    if (c.cells.empty()) {
        // one-dimensional support: smooth when every line has weight 1
        return !c.edges.empty() &&
               std::all_of(c.edges.begin(), c.edges.end(), [](const CurveEdge& e) { return e.weight == 1; });
    }
    for (const auto& cell : c.cells) {
        if (cell.corners.size() != 3 || cell.marked.size() != 3) return false;
        const auto& p = c.polynomial;
        const Vec2 a = p[static_cast<std::size_t>(cell.corners[0])].exponent;
        const Vec2 b = p[static_cast<std::size_t>(cell.corners[1])].exponent;
        const Vec2 d = p[static_cast<std::size_t>(cell.corners[2])].exponent;
        const std::int64_t det = cross(b - a, d - a);
        if (det != 1 && det != -1) return false;
    }
    return true;
}

/// Lattice points of the Newton polygon of the support, as a hull polygon.
inline std::vector<Vec2> newton_polygon(const TropicalPolynomial& p) {
    std::vector<int> idx(p.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<Vec2> out;
    for (const int i : detail::hull_corners(p, idx)) out.push_back(p[static_cast<std::size_t>(i)].exponent);
    return out;
}

/// A point on a curve: a vertex, or an edge with a lattice-length parameter
/// measured from its start.
struct CurvePoint {
    bool on_vertex = true;
    int id = 0;
    Rational t;
};

/// Locates x on the curve; nullopt when x is not on it.
inline std::optional<CurvePoint> locate(const PlaneCurve& c, const Point2& x) {
    for (std::size_t v = 0; v < c.vertices.size(); ++v) {
        if (c.vertices[v] == x) return CurvePoint{true, static_cast<int>(v), Rational(0)};
    }
    for (std::size_t i = 0; i < c.edges.size(); ++i) {
        const auto& e = c.edges[i];
        const Point2 d = x - e.start;
        if (d.x * e.direction.y != d.y * e.direction.x) continue;
        const Rational t = e.direction.x != 0 ? d.x / Rational(e.direction.x) : d.y / Rational(e.direction.y);
        if (e.kind != EdgeKind::line && t.sign() < 0) continue;
        if (e.kind == EdgeKind::segment && t > e.length()) continue;
        return CurvePoint{false, static_cast<int>(i), t};
    }
    return std::nullopt;
}

/// Compact skeleton of a curve: the union of its cycles and the paths
/// between them, metrized by lattice length.
struct Skeleton {
    MetricGraph graph;
    std::vector<int> vertex_of;      // curve vertex -> skeleton vertex, -1 off the core
    std::vector<int> attach;         // curve vertex -> skeleton vertex it retracts to
    std::vector<int> edge_of;        // curve edge -> skeleton edge, -1 off the core
    std::vector<int> curve_vertex;   // skeleton vertex -> curve vertex
    std::vector<int> curve_edge;     // skeleton edge -> curve edge
};

inline Skeleton skeleton(const PlaneCurve& c) {
    if (!is_smooth(c)) throw DomainError("curve is not smooth");
    const std::size_t nv = c.vertices.size();
    Skeleton s;
    s.vertex_of.assign(nv, -1);
    s.attach.assign(nv, -1);
    s.edge_of.assign(c.edges.size(), -1);
    if (nv == 0) {
        s.graph = MetricGraph(1, {});
        s.curve_vertex = {-1};
        return s;
    }
    std::vector<std::vector<int>> inc(nv);
    for (std::size_t i = 0; i < c.edges.size(); ++i) {
        const auto& e = c.edges[i];
        if (e.kind != EdgeKind::segment) continue;
        inc[static_cast<std::size_t>(e.from)].push_back(static_cast<int>(i));
        inc[static_cast<std::size_t>(e.to)].push_back(static_cast<int>(i));
    }
    std::vector<int> deg(nv);
    std::vector<bool> alive(nv, true);
    std::vector<int> pruned_via(nv, -1); // edge towards the core for pruned vertices
    std::vector<int> stack;
    for (std::size_t v = 0; v < nv; ++v) {
        deg[v] = static_cast<int>(inc[v].size());
        if (deg[v] <= 1) stack.push_back(static_cast<int>(v));
    }
    std::size_t alive_count = nv;
    while (!stack.empty() && alive_count > 1) {
        const int v = stack.back();
        stack.pop_back();
        if (!alive[static_cast<std::size_t>(v)] || deg[static_cast<std::size_t>(v)] > 1) continue;
        alive[static_cast<std::size_t>(v)] = false;
        --alive_count;
        for (const int e : inc[static_cast<std::size_t>(v)]) {
            const auto& ed = c.edges[static_cast<std::size_t>(e)];
            const int w = ed.from == v ? ed.to : ed.from;
            if (!alive[static_cast<std::size_t>(w)]) continue;
            pruned_via[static_cast<std::size_t>(v)] = w;
            if (--deg[static_cast<std::size_t>(w)] <= 1) stack.push_back(w);
        }
    }
    std::vector<GraphEdge> edges;
    for (std::size_t v = 0; v < nv; ++v) {
        if (!alive[v]) continue;
        s.vertex_of[v] = static_cast<int>(s.curve_vertex.size());
        s.curve_vertex.push_back(static_cast<int>(v));
    }
    for (std::size_t i = 0; i < c.edges.size(); ++i) {
        const auto& e = c.edges[i];
        if (e.kind != EdgeKind::segment) continue;
        if (!alive[static_cast<std::size_t>(e.from)] || !alive[static_cast<std::size_t>(e.to)]) continue;
        s.edge_of[i] = static_cast<int>(edges.size());
        s.curve_edge.push_back(static_cast<int>(i));
        edges.push_back({s.vertex_of[static_cast<std::size_t>(e.from)], s.vertex_of[static_cast<std::size_t>(e.to)], e.length()});
    }
    const int core = static_cast<int>(s.curve_vertex.size());
    if (edges.empty() && core == 1) {
        s.graph = MetricGraph(1, {});
    } else {
        s.graph = MetricGraph(core, edges);
    }
    for (std::size_t v = 0; v < nv; ++v) {
        int w = static_cast<int>(v);
        while (!alive[static_cast<std::size_t>(w)]) w = pruned_via[static_cast<std::size_t>(w)];
        s.attach[v] = s.vertex_of[static_cast<std::size_t>(w)];
    }
    return s;
}

/// Retraction of a curve point onto the skeleton.
inline GraphPoint retract(const PlaneCurve& c, const Skeleton& s, const CurvePoint& p) {
    if (p.on_vertex) return GraphPoint::vertex(s.attach.at(static_cast<std::size_t>(p.id)));
    const auto& e = c.edges.at(static_cast<std::size_t>(p.id));
    if (e.kind == EdgeKind::line) return GraphPoint::vertex(0);
    const int se = s.edge_of[static_cast<std::size_t>(p.id)];
    if (se < 0) return GraphPoint::vertex(s.attach[static_cast<std::size_t>(e.from)]);
    return GraphPoint::on_edge(s.graph, se, p.t);
}

inline GraphPoint retract(const PlaneCurve& c, const Skeleton& s, const Point2& x) {
    const auto p = locate(c, x);
    if (!p) throw DomainError("point is not on the curve");
    return retract(c, s, *p);
}

/// Position in the plane of a skeleton point.
inline Point2 embed(const PlaneCurve& c, const Skeleton& s, const GraphPoint& p) {
    if (p.on_vertex) {
        const int v = s.curve_vertex.at(static_cast<std::size_t>(p.id));
        return v < 0 ? Point2{} : c.vertices[static_cast<std::size_t>(v)];
    }
    const auto& e = c.edges[static_cast<std::size_t>(s.curve_edge.at(static_cast<std::size_t>(p.id)))];
    return e.start + p.offset * e.direction;
}

} // namespace tritrop
