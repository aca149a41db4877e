// Deterministic SVG scenes: curve edges and rays clipped to a box, divisor
// chips, tangency markers. Coordinates stay exact until serialization, where
// they are printed with six decimals.
#pragma once

#include "tritrop/intersect.hpp"
#include "tritrop/plane_curve.hpp"
#include "tritrop/space_lift.hpp"

#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tritrop {

struct SceneSegment {
    Point2 a;
    Point2 b;
    int weight = 1;
    std::string style;
};

/// Half-line from start, or a full line when both_ways is set.
struct SceneRay {
    Point2 start;
    Vec2 direction;
    int weight = 1;
    std::string style;
    bool both_ways = false;
};

struct SceneChip {
    Point2 at;
    int coeff = 1;
};

struct SceneMarker {
    Point2 at;
    std::string label;
};

struct Scene {
    std::vector<SceneSegment> segments;
    std::vector<SceneRay> rays;
    std::vector<SceneChip> chips;
    std::vector<SceneMarker> markers;
    std::optional<std::pair<Point2, Point2>> box; // computed by fit_box when empty
    std::map<std::string, std::string> styles{{"curve", "stroke:#000000"},
                                              {"conic", "stroke:#c0392b"},
                                              {"plane", "stroke:#2471a3"}};
    std::string title;
};

inline void add_curve(Scene& s, const PlaneCurve& c, const std::string& style = "curve") {
    for (const auto& e : c.edges) {
        switch (e.kind) {
        case EdgeKind::segment: s.segments.push_back({e.start, e.end, e.weight, style}); break;
        case EdgeKind::ray: s.rays.push_back({e.start, e.direction, e.weight, style, false}); break;
        case EdgeKind::line: s.rays.push_back({e.start, e.direction, e.weight, style, true}); break;
        }
    }
}

namespace detail {

/// Oblique projection (3x − z, 3y − 2z); keeps the four plane rays and
/// the face directions apart.
inline Point2 project(const Point3& p) { return {3 * p.x - p.z, 3 * p.y - 2 * p.z}; }
inline Vec2 project(const Vec3& v) { return {3 * v.x - v.z, 3 * v.y - 2 * v.z}; }

} // namespace detail

inline void add_space_curve(Scene& s, const SpaceCurve& c, const std::string& style = "curve") {
    for (const auto& e : c.edges) {
        if (e.ray) {
            s.rays.push_back({detail::project(e.start), detail::project(e.direction), e.weight, style, false});
        } else {
            s.segments.push_back({detail::project(e.start), detail::project(e.end), e.weight, style});
        }
    }
}

inline void add_plane(Scene& s, const TropicalPlane& pl, const std::string& style = "plane") {
    for (const auto& r : plane_rays()) s.rays.push_back({detail::project(pl.vertex), detail::project(r), 1, style, false});
}

inline void add_divisor(Scene& s, const std::vector<std::pair<Point2, int>>& chips) {
    for (const auto& [p, k] : chips) s.chips.push_back({p, k});
}

/// Smallest box containing every finite point, widened by margin on each side.
inline std::pair<Point2, Point2> fit_box(const Scene& s, const Rational& margin = Rational(1)) {
    std::vector<Point2> pts;
    for (const auto& x : s.segments) {
        pts.push_back(x.a);
        pts.push_back(x.b);
    }
    for (const auto& r : s.rays) pts.push_back(r.start);
    for (const auto& c : s.chips) pts.push_back(c.at);
    for (const auto& m : s.markers) pts.push_back(m.at);
    if (pts.empty()) return {{Rational(0), Rational(0)}, {Rational(1), Rational(1)}};
    Point2 lo = pts.front();
    Point2 hi = pts.front();
    for (const auto& p : pts) {
        lo = {min(lo.x, p.x), min(lo.y, p.y)};
        hi = {max(hi.x, p.x), max(hi.y, p.y)};
    }
    return {{lo.x - margin, lo.y - margin}, {hi.x + margin, hi.y + margin}};
}

namespace detail {

/// Parameter interval of start + t·d inside the box, intersected with [t0, ∞).
inline std::optional<std::pair<Rational, Rational>> clip(const Point2& p, const Vec2& d, const Point2& lo, const Point2& hi,
                                                         std::optional<Rational> t0) {
    std::optional<Rational> a = t0;
    std::optional<Rational> b;
    const auto axis = [&](const Rational& x, std::int64_t dx, const Rational& l, const Rational& h) {
        if (dx == 0) return x >= l && x <= h;
        Rational t1 = (l - x) / Rational(dx);
        Rational t2 = (h - x) / Rational(dx);
        if (t2 < t1) std::swap(t1, t2);
        a = a ? max(*a, t1) : t1;
        b = b ? min(*b, t2) : t2;
        return true;
    };
    if (!axis(p.x, d.x, lo.x, hi.x) || !axis(p.y, d.y, lo.y, hi.y)) return std::nullopt;
    if (!a || !b || !(*a < *b)) return std::nullopt;
    return std::make_pair(*a, *b);
}

inline std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    std::string s = buf;
    if (s == "-0.000000") s = "0.000000";
    return s;
}

inline std::string escape(const std::string& s) {
    std::string out;
    for (const char ch : s) {
        switch (ch) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += ch;
        }
    }
    return out;
}

} // namespace detail

/// SVG document; y grows upwards in scene coordinates. One scene unit is
/// 40 pixels.
inline std::string render_svg(const Scene& s) {
    const auto [lo, hi] = s.box ? *s.box : fit_box(s);
    const double unit = 40;
    const double w = (hi.x - lo.x).to_double() * unit;
    const double h = (hi.y - lo.y).to_double() * unit;
    const auto X = [&](const Rational& x) { return detail::num((x - lo.x).to_double() * unit); };
    const auto Y = [&](const Rational& y) { return detail::num((hi.y - y).to_double() * unit); };
    const auto style_of = [&](const std::string& key, int weight) {
        const auto it = s.styles.find(key);
        std::string st = it == s.styles.end() ? key : it->second;
        return st + ";stroke-width:" + std::to_string(weight == 1 ? 2 : 2 + 2 * weight) + ";fill:none";
    };
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::num(w) + "\" height=\"" + detail::num(h) +
           "\" viewBox=\"0 0 " + detail::num(w) + " " + detail::num(h) + "\">\n";
    if (!s.title.empty()) out += "<title>" + detail::escape(s.title) + "</title>\n";
    const auto line = [&](const Point2& a, const Point2& b, const std::string& st, int weight) {
        out += "<line x1=\"" + X(a.x) + "\" y1=\"" + Y(a.y) + "\" x2=\"" + X(b.x) + "\" y2=\"" + Y(b.y) + "\" style=\"" +
               style_of(st, weight) + "\"/>\n";
        if (weight != 1) {
            const Point2 m{(a.x + b.x) / Rational(2), (a.y + b.y) / Rational(2)};
            out += "<text x=\"" + X(m.x) + "\" y=\"" + Y(m.y) + "\" font-size=\"12\">" + std::to_string(weight) +
                   "</text>\n";
        }
    };
    for (const auto& x : s.segments) {
        if (x.a == x.b) continue;
        const Point2 diff{x.b.x - x.a.x, x.b.y - x.a.y};
        const auto in = [&](const Point2& p) { return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y; };
        if (in(x.a) && in(x.b)) {
            line(x.a, x.b, x.style, x.weight);
            continue;
        }
        // clip a + t·diff, t ∈ [0, 1], to the box
        Rational ta(0);
        Rational tb(1);
        bool visible = true;
        const auto axis = [&](const Rational& p, const Rational& dp, const Rational& l, const Rational& h) {
            if (dp.is_zero()) {
                visible = visible && p >= l && p <= h;
                return;
            }
            Rational t1 = (l - p) / dp;
            Rational t2 = (h - p) / dp;
            if (t2 < t1) std::swap(t1, t2);
            ta = max(ta, t1);
            tb = min(tb, t2);
        };
        axis(x.a.x, diff.x, lo.x, hi.x);
        axis(x.a.y, diff.y, lo.y, hi.y);
        if (!visible || !(ta < tb)) continue;
        line({x.a.x + ta * diff.x, x.a.y + ta * diff.y}, {x.a.x + tb * diff.x, x.a.y + tb * diff.y}, x.style, x.weight);
    }
    for (const auto& r : s.rays) {
        const auto span = detail::clip(r.start, r.direction, lo, hi, r.both_ways ? std::nullopt : std::optional(Rational(0)));
        if (!span) continue;
        line(r.start + span->first * r.direction, r.start + span->second * r.direction, r.style, r.weight);
    }
    for (const auto& c : s.chips) {
        out += "<circle cx=\"" + X(c.at.x) + "\" cy=\"" + Y(c.at.y) + "\" r=\"5.000000\" style=\"stroke:#000000;fill:" +
               (c.coeff > 0 ? "#000000" : "#ffffff") + "\"/>\n";
        if (c.coeff != 1 && c.coeff != -1) {
            out += "<text x=\"" + X(c.at.x) + "\" y=\"" + Y(c.at.y) + "\" dx=\"7\" dy=\"-7\" font-size=\"12\">" +
                   std::to_string(c.coeff) + "</text>\n";
        }
    }
    for (const auto& m : s.markers) {
        out += "<rect x=\"" + X(m.at.x) + "\" y=\"" + Y(m.at.y) +
               "\" width=\"8.000000\" height=\"8.000000\" transform=\"translate(-4,-4)\" style=\"stroke:#c0392b;fill:none\"/>\n";
        if (!m.label.empty()) {
            out += "<text x=\"" + X(m.at.x) + "\" y=\"" + Y(m.at.y) + "\" dx=\"7\" dy=\"12\" font-size=\"12\">" +
                   detail::escape(m.label) + "</text>\n";
        }
    }
    out += "</svg>\n";
    return out;
}

} // namespace tritrop
