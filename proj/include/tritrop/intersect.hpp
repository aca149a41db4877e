// Stable intersection of tropical plane curves, tangency loci, and the
// tritangency certificate. The perturbation C2 + ε·v is evaluated with
// ε infinitesimal, so every comparison is exact.
#pragma once

#include "tritrop/plane_curve.hpp"

#include "tritrop/theta.hpp"

#include <map>
#include <optional>
#include <vector>

namespace tritrop {

/// Generic perturbation direction; no primitive integer direction of small
/// height is parallel to it.
inline Point2 default_perturbation() { return {Rational(1), Rational(31, 47)}; }

struct IntersectionPoint {
    Point2 point;
    int multiplicity = 0;
    friend bool operator==(const IntersectionPoint&, const IntersectionPoint&) = default;
};

/// Points sorted lexicographically; multiplicities of coincident limits are summed.
using IntersectionDivisor = std::vector<IntersectionPoint>;

namespace detail {

struct DualPoint {
    DualRational x;
    DualRational y;
};

inline DualRational dual_cross(const DualPoint& w, const Vec2& d) {
    return w.x * Rational(d.y) - w.y * Rational(d.x);
}

/// Whether parameter s lies strictly inside the parameter range of e.
inline bool inside_range(const CurveEdge& e, const DualRational& s) {
    if (e.kind == EdgeKind::line) return true;
    if (s.sign() <= 0) return false;
    if (e.kind == EdgeKind::ray) return true;
    return (DualRational{e.length(), Rational(0)} - s).sign() > 0;
}

inline std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    std::vector<Vec2> h(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(h[k - 1] - h[k - 2], p - h[k - 2]) <= 0) --k;
        h[k++] = p;
    }
    const std::size_t lower = k + 1;
    for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
        while (k >= lower && cross(h[k - 1] - h[k - 2], *it - h[k - 2]) <= 0) --k;
        h[k++] = *it;
    }
    h.resize(k - 1);
    return h;
}

inline std::int64_t twice_area(const std::vector<Vec2>& poly) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) s += cross(poly[i], poly[(i + 1) % poly.size()]);
    return s < 0 ? -s : s;
}

} // namespace detail

/// Mixed area of the Newton polygons: the expected number of intersections.
inline int bezout_number(const TropicalPolynomial& p, const TropicalPolynomial& q) {
    std::vector<Vec2> a;
    std::vector<Vec2> b;
    std::vector<Vec2> sum;
    for (const auto& t : p.terms()) a.push_back(t.exponent);
    for (const auto& t : q.terms()) b.push_back(t.exponent);
    for (const auto& x : a) {
        for (const auto& y : b) sum.push_back(x + y);
    }
    const auto two = detail::twice_area(detail::convex_hull(sum)) - detail::twice_area(detail::convex_hull(a)) -
                     detail::twice_area(detail::convex_hull(b));
    return static_cast<int>(two / 2);
}

inline int bezout_number(const PlaneCurve& c1, const PlaneCurve& c2) {
    return bezout_number(c1.polynomial, c2.polynomial);
}

/// Limit as ε → 0 of C1 ∩ (C2 + ε·v), each transverse crossing weighted
/// by w1·w2·|det(d1, d2)|.
inline IntersectionDivisor stable_intersection(const PlaneCurve& c1, const PlaneCurve& c2,
                                               const Point2& v = default_perturbation()) {
    std::map<Point2, int> acc;
    for (const auto& e1 : c1.edges) {
        for (const auto& e2 : c2.edges) {
            const std::int64_t det = cross(e1.direction, e2.direction);
            if (det == 0) continue;
            // S1 + s·d1 = S2 + ε·v + t·d2
            const detail::DualPoint w{{e2.start.x - e1.start.x, v.x}, {e2.start.y - e1.start.y, v.y}};
            const Rational neg_det(-det);
            // Cramer on [d1, −d2]: s = cross(w, −d2) / D, t = cross(d1, w) / D
            const DualRational s = detail::dual_cross(w, -e2.direction) / neg_det;
            const DualRational t = (w.y * Rational(e1.direction.x) - w.x * Rational(e1.direction.y)) / neg_det;
            if (!detail::inside_range(e1, s) || !detail::inside_range(e2, t)) continue;
            const Point2 p = e1.start + s.real * e1.direction;
            acc[p] += e1.weight * e2.weight * static_cast<int>(det < 0 ? -det : det);
        }
    }
    IntersectionDivisor out;
    for (const auto& [p, m] : acc) out.push_back({p, m});
    return out;
}

inline int total_multiplicity(const IntersectionDivisor& d) {
    int s = 0;
    for (const auto& p : d) s += p.multiplicity;
    return s;
}

/// A tangency place: a stable point of weight ≥ 2, or a connected union of
/// bounded overlap segments carrying the stable weight of its closure.
struct TangencyEvent {
    std::vector<std::pair<Point2, Point2>> segments; // empty for point events
    Point2 point;                                    // the point, or the contact representative
    int multiplicity = 0;
    std::optional<CurvePoint> host1;
    std::optional<CurvePoint> host2;
    std::vector<std::pair<Point2, int>> contact; // half of the local stable weight

    [[nodiscard]] bool is_segment() const { return !segments.empty(); }
};

namespace detail {

struct LineKey {
    Vec2 dir; // normalized: x > 0, or x == 0 and y > 0
    Rational offset;
    friend bool operator==(const LineKey&, const LineKey&) = default;
    friend auto operator<=>(const LineKey& a, const LineKey& b) {
        if (a.dir != b.dir) return a.dir <=> b.dir;
        return a.offset <=> b.offset;
    }
};

inline Vec2 normalized(const Vec2& d) { return (d.x > 0 || (d.x == 0 && d.y > 0)) ? d : -d; }

inline Rational line_coord(const Vec2& dn, const Point2& p) {
    return dn.x != 0 ? p.x / Rational(dn.x) : p.y / Rational(dn.y);
}

inline Point2 line_point(const LineKey& k, const Rational& u) {
    if (k.dir.x != 0) {
        const Rational x = u * k.dir.x;
        return {x, (x * k.dir.y - k.offset) / Rational(k.dir.x)};
    }
    return {k.offset / Rational(k.dir.y), u * k.dir.y};
}

/// Interval with optional (infinite) ends.
struct Interval {
    std::optional<Rational> lo;
    std::optional<Rational> hi;
};

inline Interval edge_interval(const CurveEdge& e, const Vec2& dn) {
    if (e.kind == EdgeKind::line) return {};
    const Rational a = line_coord(dn, e.start);
    if (e.kind == EdgeKind::segment) {
        const Rational b = line_coord(dn, e.end);
        return {min(a, b), max(a, b)};
    }
    if (e.direction == dn) return {a, std::nullopt};
    return {std::nullopt, a};
}

inline bool lo_less(const std::optional<Rational>& a, const std::optional<Rational>& b) {
    if (!a) return b.has_value();
    return b && *a < *b;
}

inline bool segment_contains(const std::pair<Point2, Point2>& s, const Point2& p) {
    const Point2 d = s.second - s.first;
    const Point2 w = p - s.first;
    if (d.x * w.y != d.y * w.x) return false;
    const Rational dot = d.x * w.x + d.y * w.y;
    const Rational len = d.x * d.x + d.y * d.y;
    return dot.sign() >= 0 && dot <= len;
}

inline bool segments_meet(const std::pair<Point2, Point2>& a, const std::pair<Point2, Point2>& b) {
    if (segment_contains(a, b.first) || segment_contains(a, b.second) || segment_contains(b, a.first) ||
        segment_contains(b, a.second)) {
        return true;
    }
    const auto orient = [](const Point2& p, const Point2& q, const Point2& r) {
        return ((q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)).sign();
    };
    const int o1 = orient(a.first, a.second, b.first);
    const int o2 = orient(a.first, a.second, b.second);
    const int o3 = orient(b.first, b.second, a.first);
    const int o4 = orient(b.first, b.second, a.second);
    return o1 * o2 < 0 && o3 * o4 < 0;
}

/// Maximal bounded segments of the set-theoretic intersection.
inline std::vector<std::pair<Point2, Point2>> bounded_overlaps(const PlaneCurve& c1, const PlaneCurve& c2) {
    std::map<LineKey, std::vector<Interval>> pieces;
    for (const auto& e1 : c1.edges) {
        for (const auto& e2 : c2.edges) {
            if (cross(e1.direction, e2.direction) != 0) continue;
            const Point2 w = e2.start - e1.start;
            if (w.x * e1.direction.y != w.y * e1.direction.x) continue;
            const Vec2 dn = normalized(e1.direction);
            const LineKey key{dn, e1.start.x * dn.y - e1.start.y * dn.x};
            const Interval a = edge_interval(e1, dn);
            const Interval b = edge_interval(e2, dn);
            Interval c;
            c.lo = !a.lo ? b.lo : (!b.lo ? a.lo : std::optional<Rational>(max(*a.lo, *b.lo)));
            c.hi = !a.hi ? b.hi : (!b.hi ? a.hi : std::optional<Rational>(min(*a.hi, *b.hi)));
            if (c.lo && c.hi && !(*c.lo < *c.hi)) continue;
            pieces[key].push_back(c);
        }
    }
    std::vector<std::pair<Point2, Point2>> out;
    for (auto& [key, list] : pieces) {
        std::sort(list.begin(), list.end(), [](const Interval& a, const Interval& b) { return lo_less(a.lo, b.lo); });
        std::vector<Interval> merged;
        for (const auto& iv : list) {
            if (!merged.empty()) {
                auto& cur = merged.back();
                const bool touches = !cur.hi || !iv.lo || *iv.lo <= *cur.hi;
                if (touches) {
                    if (cur.hi && (!iv.hi || *iv.hi > *cur.hi)) cur.hi = iv.hi;
                    continue;
                }
            }
            merged.push_back(iv);
        }
        for (const auto& iv : merged) {
            if (iv.lo && iv.hi) out.emplace_back(line_point(key, *iv.lo), line_point(key, *iv.hi));
        }
    }
    return out;
}

/// w = t·p with p primitive and t > 0.
inline std::pair<Vec2, Rational> split_direction(const Point2& w) {
    const std::int64_t den = std::lcm(w.x.den(), w.y.den());
    const std::int64_t a = (w.x * Rational(den)).num();
    const std::int64_t b = (w.y * Rational(den)).num();
    const std::int64_t g = std::gcd(a, b);
    return {Vec2{a / g, b / g}, Rational(g, den)};
}

/// Primitive directions of the curve leaving x.
inline std::vector<Vec2> directions_at(const PlaneCurve& c, const Point2& x) {
    std::vector<Vec2> out;
    for (const auto& e : c.edges) {
        const Point2 w = x - e.start;
        if (w.x * Rational(e.direction.y) != w.y * Rational(e.direction.x)) continue;
        const Rational s = line_coord(e.direction, x) - line_coord(e.direction, e.start);
        const bool after_start = e.kind == EdgeKind::line || s.sign() > 0;
        const bool before_end = e.kind != EdgeKind::segment || s < e.length();
        if (e.kind != EdgeKind::line && s.sign() < 0) continue;
        if (e.kind == EdgeKind::segment && s > e.length()) continue;
        if (before_end) out.push_back(e.direction);
        if (after_start) out.push_back(-e.direction);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Contact divisor of a connected overlap region P of the curve c: a fire
/// started where c leaves P, with a − 1 chips wherever a fronts meet. For a
/// single segment this is its midpoint.
inline std::vector<std::pair<Point2, int>> overlap_contact(const PlaneCurve& c,
                                                           const std::vector<std::pair<Point2, Point2>>& segs) {
    std::vector<Point2> nodes;
    for (const auto& s : segs) {
        nodes.push_back(s.first);
        nodes.push_back(s.second);
    }
    for (const auto& v : c.vertices) {
        for (const auto& s : segs) {
            if (segment_contains(s, v)) nodes.push_back(v);
        }
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    std::vector<GraphEdge> edges;
    std::vector<Vec2> edge_dir;
    std::vector<std::vector<Vec2>> local(nodes.size());
    for (const auto& s : segs) {
        const Vec2 d = split_direction(s.second - s.first).first;
        std::vector<std::pair<Rational, int>> on;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (segment_contains(s, nodes[i])) on.emplace_back(line_coord(d, nodes[i]), static_cast<int>(i));
        }
        std::sort(on.begin(), on.end());
        for (std::size_t i = 0; i + 1 < on.size(); ++i) {
            const int u = on[i].second;
            const int w = on[i + 1].second;
            edges.push_back({u, w, on[i + 1].first - on[i].first});
            edge_dir.push_back(d);
            local[static_cast<std::size_t>(u)].push_back(d);
            local[static_cast<std::size_t>(w)].push_back(-d);
        }
    }
    const MetricGraph g(static_cast<int>(nodes.size()), edges);
    std::vector<int> sources;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto dirs = directions_at(c, nodes[i]);
        const bool leaves = std::any_of(dirs.begin(), dirs.end(), [&](const Vec2& d) {
            return std::find(local[i].begin(), local[i].end(), d) == local[i].end();
        });
        if (leaves) sources.push_back(static_cast<int>(i));
    }
    const Divisor d = fire_divisor(g, sources, std::vector<bool>(edges.size(), false));
    std::vector<std::pair<Point2, int>> out;
    for (const auto& [p, k] : d.support()) {
        if (p.on_vertex) {
            out.emplace_back(nodes[static_cast<std::size_t>(p.id)], k);
        } else {
            const auto& e = edges[static_cast<std::size_t>(p.id)];
            out.emplace_back(nodes[static_cast<std::size_t>(e.u)] + p.offset * edge_dir[static_cast<std::size_t>(p.id)], k);
        }
    }
    return out;
}

} // namespace detail

/// Tangency events of the pair, sorted by representative point.
inline std::vector<TangencyEvent> tangencies(const PlaneCurve& c1, const PlaneCurve& c2,
                                             const Point2& v = default_perturbation()) {
    const auto stable = stable_intersection(c1, c2, v);
    const auto overlaps = detail::bounded_overlaps(c1, c2);
    // connected components of the overlap segments
    std::vector<int> comp(overlaps.size(), -1);
    int ncomp = 0;
    for (std::size_t i = 0; i < overlaps.size(); ++i) {
        if (comp[i] >= 0) continue;
        comp[i] = ncomp;
        std::vector<std::size_t> stack{i};
        while (!stack.empty()) {
            const std::size_t a = stack.back();
            stack.pop_back();
            for (std::size_t b = 0; b < overlaps.size(); ++b) {
                if (comp[b] < 0 && detail::segments_meet(overlaps[a], overlaps[b])) {
                    comp[b] = ncomp;
                    stack.push_back(b);
                }
            }
        }
        ++ncomp;
    }
    std::vector<TangencyEvent> events(static_cast<std::size_t>(ncomp));
    for (std::size_t i = 0; i < overlaps.size(); ++i) {
        events[static_cast<std::size_t>(comp[i])].segments.push_back(overlaps[i]);
    }
    for (auto& ev : events) {
        std::sort(ev.segments.begin(), ev.segments.end());
        ev.contact = detail::overlap_contact(c1, ev.segments);
        const auto& s = ev.segments.front();
        ev.point = ev.contact.empty() ? Rational(1, 2) * (s.first + s.second) : ev.contact.front().first;
    }
    for (const auto& sp : stable) {
        bool absorbed = false;
        for (auto& ev : events) {
            if (!ev.is_segment()) continue;
            const bool in = std::any_of(ev.segments.begin(), ev.segments.end(),
                                        [&](const auto& s) { return detail::segment_contains(s, sp.point); });
            if (in) {
                ev.multiplicity += sp.multiplicity;
                absorbed = true;
                break;
            }
        }
        if (!absorbed && sp.multiplicity >= 2) {
            TangencyEvent ev;
            ev.point = sp.point;
            ev.multiplicity = sp.multiplicity;
            ev.contact.emplace_back(sp.point, sp.multiplicity / 2);
            events.push_back(ev);
        }
    }
    for (auto& ev : events) {
        ev.host1 = locate(c1, ev.point);
        ev.host2 = locate(c2, ev.point);
    }
    std::sort(events.begin(), events.end(), [](const TangencyEvent& a, const TangencyEvent& b) { return a.point < b.point; });
    return events;
}

struct TritangencyCertificate {
    std::vector<TangencyEvent> events;
    std::vector<int> partition;                 // descending multiplicities
    std::vector<std::pair<Point2, int>> contact; // representative point, multiplicity / 2
};

/// Certificate that C2 is tritangent to C1: even tangency weights summing
/// to 6 that account for the whole stable intersection.
inline std::optional<TritangencyCertificate> tritangency_certificate(const PlaneCurve& c1, const PlaneCurve& c2,
                                                                     const Point2& v = default_perturbation()) {
    const auto stable = stable_intersection(c1, c2, v);
    const int total = total_multiplicity(stable);
    if (total != 6) return std::nullopt;
    TritangencyCertificate cert;
    cert.events = tangencies(c1, c2, v);
    int covered = 0;
    for (const auto& ev : cert.events) {
        if (ev.multiplicity % 2 != 0 || ev.multiplicity == 0) return std::nullopt;
        covered += ev.multiplicity;
        cert.partition.push_back(ev.multiplicity);
        int chips = 0;
        for (const auto& [p, k] : ev.contact) chips += k;
        if (2 * chips != ev.multiplicity) return std::nullopt;
        cert.contact.insert(cert.contact.end(), ev.contact.begin(), ev.contact.end());
    }
    if (covered != total) return std::nullopt;
    std::sort(cert.partition.rbegin(), cert.partition.rend());
    return cert;
}

} // namespace tritrop
