// Line-based text formats for graphs, divisors, tropical polynomials in two
// and three variables, and real polynomials. Blank lines and lines starting
// with '#' are ignored. Rationals are written as num/den.
#pragma once

#include "tritrop/graph.hpp"
#include "tritrop/plane_curve.hpp"
#include "tritrop/real_search.hpp"
#include "tritrop/space_lift.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace tritrop {

/// Malformed text input; the message carries the line number.
class ParseError : public DomainError {
  public:
    ParseError(int line, const std::string& reason)
        : DomainError("line " + std::to_string(line) + ": " + reason), line_(line) {}
    [[nodiscard]] int line() const noexcept { return line_; }

  private:
    int line_;
};

namespace detail {

struct Line {
    int number = 0;
    std::vector<std::string> fields;
};

inline std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string raw;
    int n = 0;
    while (std::getline(in, raw)) {
        ++n;
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        Line l{n, {}};
        for (std::string f; ls >> f;) l.fields.push_back(f);
        if (!l.fields.empty()) out.push_back(std::move(l));
    }
    return out;
}

inline Rational rational_field(const Line& l, std::size_t i) {
    try {
        return Rational::parse(l.fields.at(i));
    } catch (const std::out_of_range&) {
        throw ParseError(l.number, "missing field");
    } catch (const std::exception& e) {
        throw ParseError(l.number, e.what());
    }
}

inline std::int64_t int_field(const Line& l, std::size_t i) {
    const Rational r = rational_field(l, i);
    if (!r.is_integer() || l.fields[i].find('/') != std::string::npos) throw ParseError(l.number, "expected an integer");
    return r.num();
}

inline int small_int_field(const Line& l, std::size_t i) {
    const std::int64_t v = int_field(l, i);
    if (v < INT32_MIN || v > INT32_MAX) throw ParseError(l.number, "integer out of range");
    return static_cast<int>(v);
}

inline void expect_fields(const Line& l, std::size_t n) {
    if (l.fields.size() < n) throw ParseError(l.number, "missing field");
    if (l.fields.size() > n) throw ParseError(l.number, "trailing field");
}

} // namespace detail

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// `vertices n` followed by `edge u v len` lines.
inline MetricGraph parse_graph(const std::string& text) {
    const auto lines = detail::tokenize(text);
    if (lines.empty()) throw ParseError(1, "expected 'vertices n'");
    const auto& head = lines.front();
    if (head.fields[0] != "vertices") throw ParseError(head.number, "expected 'vertices n'");
    detail::expect_fields(head, 2);
    const int n = detail::small_int_field(head, 1);
    std::vector<GraphEdge> edges;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& l = lines[i];
        if (l.fields[0] != "edge") throw ParseError(l.number, "expected 'edge u v length'");
        detail::expect_fields(l, 4);
        GraphEdge e{detail::small_int_field(l, 1), detail::small_int_field(l, 2), detail::rational_field(l, 3)};
        if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) throw ParseError(l.number, "edge endpoint out of range");
        if (e.length.sign() <= 0) throw ParseError(l.number, "edge length must be positive");
        edges.push_back(e);
    }
    try {
        return MetricGraph(n, std::move(edges));
    } catch (const DomainError& e) {
        throw ParseError(head.number, e.what());
    }
}

inline std::string serialize_graph(const MetricGraph& g) {
    std::string out = "vertices " + std::to_string(g.vertex_count()) + "\n";
    for (const auto& e : g.edges()) {
        out += "edge " + std::to_string(e.u) + " " + std::to_string(e.v) + " " + e.length.str() + "\n";
    }
    return out;
}

/// `point edge offset coeff` lines; `vertex v coeff` is also accepted.
inline Divisor parse_divisor(const std::string& text, const MetricGraph& g) {
    Divisor d;
    for (const auto& l : detail::tokenize(text)) {
        if (l.fields[0] == "point") {
            detail::expect_fields(l, 4);
            const int e = detail::small_int_field(l, 1);
            if (e < 0 || e >= g.edge_count()) throw ParseError(l.number, "edge id out of range");
            const Rational off = detail::rational_field(l, 2);
            if (off.sign() < 0 || off > g.edge(e).length) throw ParseError(l.number, "offset outside edge");
            d.add(GraphPoint::on_edge(g, e, off), detail::small_int_field(l, 3));
        } else if (l.fields[0] == "vertex") {
            detail::expect_fields(l, 3);
            const int v = detail::small_int_field(l, 1);
            if (v < 0 || v >= g.vertex_count()) throw ParseError(l.number, "vertex out of range");
            d.add(GraphPoint::vertex(v), detail::small_int_field(l, 2));
        } else {
            throw ParseError(l.number, "expected 'point edge offset coeff'");
        }
    }
    return d;
}

/// Vertices are written on their lowest incident edge; on an edgeless graph
/// as `vertex v coeff`.
inline std::string serialize_divisor(const Divisor& d, const MetricGraph& g) {
    std::string out;
    for (const auto& [p, c] : d.support()) {
        if (!p.on_vertex) {
            out += "point " + std::to_string(p.id) + " " + p.offset.str() + " " + std::to_string(c) + "\n";
            continue;
        }
        bool written = false;
        for (int e = 0; e < g.edge_count() && !written; ++e) {
            const auto& ed = g.edge(e);
            if (ed.u == p.id || ed.v == p.id) {
                const Rational off = ed.u == p.id ? Rational(0) : ed.length;
                out += "point " + std::to_string(e) + " " + off.str() + " " + std::to_string(c) + "\n";
                written = true;
            }
        }
        if (!written) out += "vertex " + std::to_string(p.id) + " " + std::to_string(c) + "\n";
    }
    return out;
}

/// `a b h` lines: exponent (a, b) with height h.
inline TropicalPolynomial parse_polynomial(const std::string& text) {
    std::vector<Term> terms;
    std::set<Vec2> seen;
    for (const auto& l : detail::tokenize(text)) {
        detail::expect_fields(l, 3);
        Term t{{detail::int_field(l, 0), detail::int_field(l, 1)}, detail::rational_field(l, 2)};
        if (t.exponent.x < 0 || t.exponent.y < 0) throw ParseError(l.number, "negative exponent");
        if (!seen.insert(t.exponent).second) throw ParseError(l.number, "repeated support point");
        terms.push_back(t);
    }
    if (terms.empty()) throw ParseError(1, "empty support");
    return TropicalPolynomial(std::move(terms));
}

inline std::string serialize_polynomial(const TropicalPolynomial& p) {
    std::string out;
    for (const auto& t : p.terms()) {
        out += std::to_string(t.exponent.x) + " " + std::to_string(t.exponent.y) + " " + t.height.str() + "\n";
    }
    return out;
}

/// `a b c h` lines for the ten monomials of a tropical quadric.
inline TropicalQuadric parse_quadric(const std::string& text) {
    std::vector<QuadricTerm> terms;
    std::set<Vec3> seen;
    for (const auto& l : detail::tokenize(text)) {
        detail::expect_fields(l, 4);
        QuadricTerm t{{detail::int_field(l, 0), detail::int_field(l, 1), detail::int_field(l, 2)},
                      detail::rational_field(l, 3)};
        if (!seen.insert(t.exponent).second) throw ParseError(l.number, "repeated support point");
        const auto& e = t.exponent;
        if (e.x < 0 || e.y < 0 || e.z < 0 || e.x + e.y + e.z > 2) throw ParseError(l.number, "exponent outside 2Δ3");
        terms.push_back(t);
    }
    return TropicalQuadric(std::move(terms));
}

inline std::string serialize_quadric(const TropicalQuadric& q) {
    std::string out;
    for (const auto& t : q.terms()) {
        out += std::to_string(t.exponent.x) + " " + std::to_string(t.exponent.y) + " " + std::to_string(t.exponent.z) +
               " " + t.height.str() + "\n";
    }
    return out;
}

/// `i j k coef` lines of a real polynomial with rational coefficients.
inline Poly3 parse_real_polynomial(const std::string& text) {
    Poly3 p;
    bool any = false;
    for (const auto& l : detail::tokenize(text)) {
        detail::expect_fields(l, 4);
        const Poly3::Exponent e{detail::small_int_field(l, 0), detail::small_int_field(l, 1), detail::small_int_field(l, 2)};
        if (e[0] < 0 || e[1] < 0 || e[2] < 0) throw ParseError(l.number, "negative exponent");
        p.add(e, detail::rational_field(l, 3).to_double());
        any = true;
    }
    if (!any) throw ParseError(1, "empty polynomial");
    return p;
}

} // namespace tritrop
