// Metric graphs, divisors on them, and divisor theory: reduced divisors via
// metric Dhar burning, linear equivalence, Baker–Norine rank, and the
// Riemann–Roch residual.
#pragma once

#include "tritrop/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tritrop {

/// Thrown when an exact algorithm violates one of its own invariants.
class InternalError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// Thrown for inputs that violate an operation's precondition.
class DomainError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

struct GraphEdge {
    int u = 0;
    int v = 0;
    Rational length;
};

/// Finite multigraph with positive rational edge lengths. Loops and parallel
/// edges are allowed.
class MetricGraph {
  public:
    MetricGraph() = default;
    MetricGraph(int vertex_count, std::vector<GraphEdge> edges)
        : vertex_count_(vertex_count), edges_(std::move(edges)) {
        if (vertex_count_ < 1) throw DomainError("graph needs at least one vertex");
        for (const auto& e : edges_) {
            if (e.u < 0 || e.v < 0 || e.u >= vertex_count_ || e.v >= vertex_count_) {
                throw DomainError("edge endpoint out of range");
            }
            if (e.length.sign() <= 0) throw DomainError("edge length must be positive");
        }
    }

    [[nodiscard]] int vertex_count() const noexcept { return vertex_count_; }
    [[nodiscard]] int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
    [[nodiscard]] const std::vector<GraphEdge>& edges() const noexcept { return edges_; }
    [[nodiscard]] const GraphEdge& edge(int id) const { return edges_.at(static_cast<std::size_t>(id)); }

    /// Number of edge ends at each vertex; a loop counts twice.
    [[nodiscard]] std::vector<int> valences() const {
        std::vector<int> val(static_cast<std::size_t>(vertex_count_), 0);
        for (const auto& e : edges_) {
            ++val[static_cast<std::size_t>(e.u)];
            ++val[static_cast<std::size_t>(e.v)];
        }
        return val;
    }

    [[nodiscard]] bool is_connected() const {
        std::vector<int> parent(static_cast<std::size_t>(vertex_count_));
        std::iota(parent.begin(), parent.end(), 0);
        const auto find = [&](int x) {
            while (parent[static_cast<std::size_t>(x)] != x) {
                x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            }
            return x;
        };
        int components = vertex_count_;
        for (const auto& e : edges_) {
            const int a = find(e.u);
            const int b = find(e.v);
            if (a != b) {
                parent[static_cast<std::size_t>(a)] = b;
                --components;
            }
        }
        return components == 1;
    }

  private:
    int vertex_count_ = 1;
    std::vector<GraphEdge> edges_;
};

/// First Betti number #E − #V + 1. Throws DomainError on disconnected input.
inline int genus(const MetricGraph& g) {
    if (!g.is_connected()) throw DomainError("graph is disconnected");
    return g.edge_count() - g.vertex_count() + 1;
}

/// A point of a metric graph in canonical form: either a vertex, or an edge
/// together with an offset strictly inside (0, length) measured from edge.u.
struct GraphPoint {
    bool on_vertex = true;
    int id = 0; // vertex id or edge id
    Rational offset;

    static GraphPoint vertex(int v) { return GraphPoint{true, v, Rational(0)}; }

    /// Canonicalizes an edge point: offsets 0 and length become vertex references.
    static GraphPoint on_edge(const MetricGraph& g, int edge_id, const Rational& offset) {
        const auto& e = g.edge(edge_id);
        if (offset.sign() < 0 || offset > e.length) throw DomainError("offset outside edge");
        if (offset.is_zero()) return vertex(e.u);
        if (offset == e.length) return vertex(e.v);
        return GraphPoint{false, edge_id, offset};
    }

    friend bool operator==(const GraphPoint&, const GraphPoint&) = default;
    friend std::strong_ordering operator<=>(const GraphPoint& a, const GraphPoint& b) {
        if (a.on_vertex != b.on_vertex) return a.on_vertex ? std::strong_ordering::less : std::strong_ordering::greater;
        if (auto c = a.id <=> b.id; c != 0) return c;
        return a.offset <=> b.offset;
    }
};

/// Finite integer combination of graph points; zero coefficients are never stored.
class Divisor {
  public:
    Divisor() = default;

    void add(const GraphPoint& p, int coeff) {
        if (coeff == 0) return;
        auto [it, inserted] = chips_.try_emplace(p, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second == 0) chips_.erase(it);
        }
    }

    [[nodiscard]] int coeff(const GraphPoint& p) const {
        const auto it = chips_.find(p);
        return it == chips_.end() ? 0 : it->second;
    }

    [[nodiscard]] int degree() const {
        int d = 0;
        for (const auto& [p, c] : chips_) d += c;
        return d;
    }

    [[nodiscard]] bool is_effective() const {
        return std::all_of(chips_.begin(), chips_.end(), [](const auto& kv) { return kv.second >= 0; });
    }

    [[nodiscard]] bool empty() const noexcept { return chips_.empty(); }
    [[nodiscard]] const std::map<GraphPoint, int>& support() const noexcept { return chips_; }

    friend Divisor operator+(Divisor a, const Divisor& b) {
        for (const auto& [p, c] : b.chips_) a.add(p, c);
        return a;
    }
    friend Divisor operator-(Divisor a, const Divisor& b) {
        for (const auto& [p, c] : b.chips_) a.add(p, -c);
        return a;
    }
    friend Divisor operator*(int k, const Divisor& d) {
        Divisor out;
        for (const auto& [p, c] : d.chips_) out.add(p, k * c);
        return out;
    }
    friend bool operator==(const Divisor&, const Divisor&) = default;
    friend bool operator<(const Divisor& a, const Divisor& b) { return a.chips_ < b.chips_; }

  private:
    std::map<GraphPoint, int> chips_;
};

/// K = Σ_v (valence(v) − 2)·v.
inline Divisor canonical_divisor(const MetricGraph& g) {
    Divisor k;
    const auto val = g.valences();
    for (int v = 0; v < g.vertex_count(); ++v) k.add(GraphPoint::vertex(v), val[static_cast<std::size_t>(v)] - 2);
    return k;
}

namespace detail {

/// Mutable subdivision of a base graph used while moving chips. Every chip
/// sits on a vertex; each working edge is a sub-interval of one base edge.
class ChipGraph {
  public:
    struct Edge {
        int a = 0;
        int b = 0;
        Rational length;
        int base = 0;
        Rational off_a; // base-edge offset at a
        Rational off_b; // base-edge offset at b
        bool alive = true;
    };

    ChipGraph(const MetricGraph& base, const std::vector<GraphPoint>& marked) : base_(&base) {
        for (int v = 0; v < base.vertex_count(); ++v) add_vertex(GraphPoint::vertex(v), true);
        std::vector<std::vector<Rational>> cuts(static_cast<std::size_t>(base.edge_count()));
        for (const auto& p : marked) {
            if (!p.on_vertex) cuts[static_cast<std::size_t>(p.id)].push_back(p.offset);
        }
        for (int e = 0; e < base.edge_count(); ++e) {
            auto& c = cuts[static_cast<std::size_t>(e)];
            const auto& be = base.edge(e);
            std::sort(c.begin(), c.end());
            c.erase(std::unique(c.begin(), c.end()), c.end());
            int prev = be.u;
            Rational prev_off(0);
            for (const auto& off : c) {
                const int w = add_vertex(GraphPoint::on_edge(base, e, off), true);
                add_edge(prev, w, off - prev_off, e, prev_off, off);
                prev = w;
                prev_off = off;
            }
            add_edge(prev, be.v, be.length - prev_off, e, prev_off, be.length);
        }
    }

    [[nodiscard]] int vertex_count() const { return static_cast<int>(pos_.size()); }
    [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
    [[nodiscard]] const std::vector<int>& incident(int v) const { return inc_[static_cast<std::size_t>(v)]; }
    [[nodiscard]] const GraphPoint& position(int v) const { return pos_[static_cast<std::size_t>(v)]; }
    [[nodiscard]] int other(int e, int v) const {
        const auto& ed = edges_[static_cast<std::size_t>(e)];
        return ed.a == v ? ed.b : ed.a;
    }

    int& chips(int v) { return chips_[static_cast<std::size_t>(v)]; }
    [[nodiscard]] int chips(int v) const { return chips_[static_cast<std::size_t>(v)]; }

    [[nodiscard]] int vertex_at(const GraphPoint& p) const {
        const auto it = index_.find(p);
        if (it == index_.end()) throw InternalError("point is not a vertex of the chip graph");
        return it->second;
    }

    void load(const Divisor& d) {
        for (const auto& [p, c] : d.support()) chips(vertex_at(p)) += c;
    }

    [[nodiscard]] Divisor divisor() const {
        Divisor d;
        for (int v = 0; v < vertex_count(); ++v) {
            if (chips_[static_cast<std::size_t>(v)] != 0) d.add(pos_[static_cast<std::size_t>(v)], chips_[static_cast<std::size_t>(v)]);
        }
        return d;
    }

    void mark_essential(int v) { essential_[static_cast<std::size_t>(v)] = true; }

    struct Split {
        int vertex;
        int edge_from; // edge joining `from` to `vertex`, or -1 when t == 0
    };

    /// Vertex at distance t from `from` along edge e; subdivides when needed.
    Split split_at(int e, int from, const Rational& t) {
        Edge ed = edges_[static_cast<std::size_t>(e)];
        if (t.is_zero()) return {from, -1};
        const bool forward = ed.a == from;
        if (t == ed.length) return {forward ? ed.b : ed.a, e};
        if (t > ed.length || t.sign() < 0) throw InternalError("split outside edge");
        const Rational& off_from = forward ? ed.off_a : ed.off_b;
        const Rational& off_to = forward ? ed.off_b : ed.off_a;
        const Rational off = off_to > off_from ? off_from + t : off_from - t;
        const int w = add_vertex(GraphPoint::on_edge(*base_, ed.base, off), false);
        const int to = forward ? ed.b : ed.a;
        kill_edge(e);
        const int first = add_edge(from, w, t, ed.base, off_from, off);
        add_edge(w, to, ed.length - t, ed.base, off, off_to);
        return {w, first};
    }

    int point_along(int e, int from, const Rational& t) { return split_at(e, from, t).vertex; }

    /// Removes chipless non-essential vertices of valence two.
    void simplify() {
        for (int w = 0; w < vertex_count(); ++w) {
            const auto sw = static_cast<std::size_t>(w);
            if (essential_[sw] || chips_[sw] != 0 || !alive_[sw] || inc_[sw].size() != 2) continue;
            const int e1 = inc_[sw][0];
            const int e2 = inc_[sw][1];
            if (e1 == e2) continue;
            const Edge a = edges_[static_cast<std::size_t>(e1)];
            const Edge b = edges_[static_cast<std::size_t>(e2)];
            const int x = a.a == w ? a.b : a.a;
            const Rational off_x = a.a == w ? a.off_b : a.off_a;
            const int y = b.a == w ? b.b : b.a;
            const Rational off_y = b.a == w ? b.off_b : b.off_a;
            kill_edge(e1);
            kill_edge(e2);
            alive_[sw] = false;
            index_.erase(pos_[sw]);
            add_edge(x, y, a.length + b.length, a.base, off_x, off_y);
        }
    }

  private:
    int add_vertex(const GraphPoint& p, bool essential) {
        const auto it = index_.find(p);
        if (it != index_.end()) {
            if (essential) essential_[static_cast<std::size_t>(it->second)] = true;
            return it->second;
        }
        const int id = vertex_count();
        pos_.push_back(p);
        chips_.push_back(0);
        inc_.emplace_back();
        essential_.push_back(essential);
        alive_.push_back(true);
        index_.emplace(p, id);
        return id;
    }

    int add_edge(int a, int b, const Rational& len, int base, const Rational& off_a, const Rational& off_b) {
        const int id = static_cast<int>(edges_.size());
        edges_.push_back(Edge{a, b, len, base, off_a, off_b, true});
        inc_[static_cast<std::size_t>(a)].push_back(id);
        inc_[static_cast<std::size_t>(b)].push_back(id);
        return id;
    }

    void kill_edge(int e) {
        auto& ed = edges_[static_cast<std::size_t>(e)];
        ed.alive = false;
        for (int v : {ed.a, ed.b}) {
            auto& list = inc_[static_cast<std::size_t>(v)];
            const auto it = std::find(list.begin(), list.end(), e);
            if (it != list.end()) list.erase(it);
        }
    }

    const MetricGraph* base_;
    std::vector<GraphPoint> pos_;
    std::vector<int> chips_;
    std::vector<std::vector<int>> inc_;
    std::vector<bool> essential_;
    std::vector<bool> alive_;
    std::vector<Edge> edges_;
    std::map<GraphPoint, int> index_;
};

inline constexpr long kReductionIterationCap = 1'000'000;

/// Exact shortest-path distances from `source` on the chip graph.
inline std::vector<Rational> distances_from(const ChipGraph& cg, int source) {
    const int n = cg.vertex_count();
    std::vector<std::optional<Rational>> dist(static_cast<std::size_t>(n));
    using Item = std::pair<Rational, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[static_cast<std::size_t>(source)] = Rational(0);
    pq.emplace(Rational(0), source);
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (*dist[static_cast<std::size_t>(v)] < d) continue;
        for (int e : cg.incident(v)) {
            const int w = cg.other(e, v);
            const Rational nd = d + cg.edges()[static_cast<std::size_t>(e)].length;
            auto& slot = dist[static_cast<std::size_t>(w)];
            if (!slot || nd < *slot) {
                slot = nd;
                pq.emplace(nd, w);
            }
        }
    }
    std::vector<Rational> out(static_cast<std::size_t>(n), Rational(-1));
    for (int v = 0; v < n; ++v) {
        if (dist[static_cast<std::size_t>(v)]) out[static_cast<std::size_t>(v)] = *dist[static_cast<std::size_t>(v)];
    }
    return out;
}

/// Moves negative chips away from every point except q. On return all chips
/// off q are nonnegative. Works by repeatedly borrowing along the sphere of
/// largest radius (around q) that still carries a negative chip.
inline void make_effective_away_from(ChipGraph& cg, int q) {
    // Split every edge at the local maximum of dist(q, ·) so distance is monotone along edges.
    {
        const auto dist = distances_from(cg, q);
        const auto edge_snapshot = cg.edges();
        for (int e = 0; e < static_cast<int>(edge_snapshot.size()); ++e) {
            const auto& ed = edge_snapshot[static_cast<std::size_t>(e)];
            if (!ed.alive) continue;
            const Rational da = dist[static_cast<std::size_t>(ed.a)];
            const Rational db = dist[static_cast<std::size_t>(ed.b)];
            if (abs(da - db) < ed.length) {
                const int w = cg.point_along(e, ed.a, (ed.length + db - da) / Rational(2));
                cg.mark_essential(w);
            }
        }
    }
    for (long iter = 0; iter < kReductionIterationCap; ++iter) {
        const auto dist = distances_from(cg, q);
        std::optional<Rational> r;
        for (int v = 0; v < cg.vertex_count(); ++v) {
            if (v == q || cg.chips(v) >= 0) continue;
            if (!r || *r < dist[static_cast<std::size_t>(v)]) r = dist[static_cast<std::size_t>(v)];
        }
        if (!r) return;
        Rational inner(0);
        for (int v = 0; v < cg.vertex_count(); ++v) {
            if (cg.incident(v).empty() && v != q) continue;
            const Rational& d = dist[static_cast<std::size_t>(v)];
            if (d < *r && d > inner) inner = d;
        }
        const Rational delta = *r - inner;
        // Borrow m times from the closed set {dist >= r}.
        int m = 0;
        for (int v = 0; v < cg.vertex_count(); ++v) {
            if (v != q && dist[static_cast<std::size_t>(v)] == *r) m = std::max(m, -cg.chips(v));
        }
        // Boundary points: vertices at radius r, plus interior points where an edge crosses r.
        struct Move {
            int edge;
            int from;
        };
        std::vector<Move> moves;
        const auto edge_snapshot = cg.edges();
        for (int e = 0; e < static_cast<int>(edge_snapshot.size()); ++e) {
            const auto& ed = edge_snapshot[static_cast<std::size_t>(e)];
            if (!ed.alive) continue;
            const Rational da = dist[static_cast<std::size_t>(ed.a)];
            const Rational db = dist[static_cast<std::size_t>(ed.b)];
            const int lo = da < db ? ed.a : ed.b;
            const Rational dlo = min(da, db);
            const Rational dhi = max(da, db);
            if (dlo < *r && dhi >= *r) moves.push_back(Move{e, lo});
        }
        for (const auto& mv : moves) {
            const Rational t_r = *r - dist[static_cast<std::size_t>(mv.from)];
            const auto outer = cg.split_at(mv.edge, mv.from, t_r);
            const int inner_v = cg.point_along(outer.edge_from, outer.vertex, delta);
            cg.chips(outer.vertex) += m;
            cg.chips(inner_v) -= m;
        }
        if (moves.empty()) throw InternalError("negative chip with no borrowing edge");
    }
    throw InternalError("iteration cap reached while making divisor effective");
}

/// Metric Dhar burning from q. Returns the vertices that remain unburnt.
inline std::vector<bool> burn(const ChipGraph& cg, int q, std::vector<int>& incoming) {
    const int n = cg.vertex_count();
    std::vector<bool> burnt(static_cast<std::size_t>(n), false);
    incoming.assign(static_cast<std::size_t>(n), 0);
    std::vector<bool> edge_burnt(cg.edges().size(), false);
    std::vector<int> stack{q};
    burnt[static_cast<std::size_t>(q)] = true;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int e : cg.incident(v)) {
            if (edge_burnt[static_cast<std::size_t>(e)]) continue;
            edge_burnt[static_cast<std::size_t>(e)] = true;
            const int w = cg.other(e, v);
            if (burnt[static_cast<std::size_t>(w)]) continue;
            if (++incoming[static_cast<std::size_t>(w)] > cg.chips(w)) {
                burnt[static_cast<std::size_t>(w)] = true;
                stack.push_back(w);
            }
        }
    }
    std::vector<bool> unburnt(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) unburnt[static_cast<std::size_t>(v)] = !burnt[static_cast<std::size_t>(v)] && !cg.incident(v).empty();
    return unburnt;
}

} // namespace detail

/// The unique q-reduced divisor linearly equivalent to d.
inline Divisor reduce(const MetricGraph& g, const Divisor& d, const GraphPoint& q) {
    if (d.empty() && q.on_vertex) return d;
    std::vector<GraphPoint> marked;
    marked.reserve(d.support().size() + 2);
    for (const auto& [p, c] : d.support()) marked.push_back(p);
    marked.push_back(q);
    // Subdivide loops so the working graph has no loops initially.
    for (int e = 0; e < g.edge_count(); ++e) {
        if (g.edge(e).u == g.edge(e).v) marked.push_back(GraphPoint::on_edge(g, e, g.edge(e).length / Rational(2)));
    }
    detail::ChipGraph cg(g, marked);
    cg.load(d);
    const int qv = cg.vertex_at(q);
    cg.mark_essential(qv);
    detail::make_effective_away_from(cg, qv);
    cg.simplify();

    std::vector<int> incoming;
    for (long iter = 0; iter < detail::kReductionIterationCap; ++iter) {
        const auto unburnt = detail::burn(cg, qv, incoming);
        struct Out {
            int edge;
            int from;
        };
        std::vector<Out> outs;
        std::optional<Rational> delta;
        for (int v = 0; v < cg.vertex_count(); ++v) {
            if (!unburnt[static_cast<std::size_t>(v)]) continue;
            for (int e : cg.incident(v)) {
                const int w = cg.other(e, v);
                if (unburnt[static_cast<std::size_t>(w)]) continue;
                outs.push_back(Out{e, v});
                const Rational& len = cg.edges()[static_cast<std::size_t>(e)].length;
                if (!delta || len < *delta) delta = len;
            }
        }
        if (outs.empty()) {
            bool any = false;
            for (int v = 0; v < cg.vertex_count(); ++v) any = any || unburnt[static_cast<std::size_t>(v)];
            if (any) throw InternalError("unburnt set without boundary");
            return cg.divisor();
        }
        for (const auto& o : outs) {
            if (cg.chips(o.from) <= 0) throw InternalError("illegal firing during reduction");
            const int w = cg.point_along(o.edge, o.from, *delta);
            cg.chips(o.from) -= 1;
            cg.chips(w) += 1;
        }
        cg.simplify();
    }
    throw InternalError("reduction iteration cap reached");
}

/// Fixed base point used for equivalence tests: the lowest-id vertex.
inline GraphPoint base_point(const MetricGraph&) { return GraphPoint::vertex(0); }

inline bool is_equivalent(const MetricGraph& g, const Divisor& a, const Divisor& b) {
    if (a.degree() != b.degree()) return false;
    const auto q = base_point(g);
    return reduce(g, a - b, q).empty();
}

/// True when d is linearly equivalent to an effective divisor.
inline bool is_effective_class(const MetricGraph& g, const Divisor& d) {
    if (d.degree() < 0) return false;
    const auto q = base_point(g);
    return reduce(g, d, q).coeff(q) >= 0;
}

/// Vertices of a loopless model of g (vertices plus a midpoint on every loop).
/// Such a set is rank-determining.
inline std::vector<GraphPoint> rank_determining_set(const MetricGraph& g) {
    std::vector<GraphPoint> a;
    for (int v = 0; v < g.vertex_count(); ++v) a.push_back(GraphPoint::vertex(v));
    for (int e = 0; e < g.edge_count(); ++e) {
        if (g.edge(e).u == g.edge(e).v) a.push_back(GraphPoint::on_edge(g, e, g.edge(e).length / Rational(2)));
    }
    return a;
}

namespace detail {

class RankSolver {
  public:
    explicit RankSolver(const MetricGraph& g) : g_(g), q_(base_point(g)), test_points_(rank_determining_set(g)) {}

    /// Whether every effective E of degree k on the test set leaves d − E effective-equivalent.
    bool at_least(const Divisor& reduced, int k) {
        if (reduced.coeff(q_) < 0) return false;
        if (k <= 0) return true;
        if (reduced.degree() < k) return false;
        const auto key = std::make_pair(reduced, k);
        if (const auto it = memo_.find(key); it != memo_.end()) return it->second;
        bool ok = true;
        for (const auto& p : test_points_) {
            Divisor next = reduced;
            next.add(p, -1);
            if (!at_least(reduce(g_, next, q_), k - 1)) {
                ok = false;
                break;
            }
        }
        memo_.emplace(key, ok);
        return ok;
    }

    int rank(const Divisor& d) {
        if (d.degree() < 0) return -1;
        const Divisor red = reduce(g_, d, q_);
        if (red.coeff(q_) < 0) return -1;
        int k = 0;
        while (k < d.degree() && at_least(red, k + 1)) ++k;
        return k;
    }

  private:
    const MetricGraph& g_;
    GraphPoint q_;
    std::vector<GraphPoint> test_points_;
    std::map<std::pair<Divisor, int>, bool> memo_;
};

} // namespace detail

/// Baker–Norine rank; −1 when d is not equivalent to an effective divisor.
inline int rank(const MetricGraph& g, const Divisor& d) {
    detail::RankSolver solver(g);
    return solver.rank(d);
}

/// r(D) − r(K − D) − (deg D − g + 1); zero by Riemann–Roch.
inline int riemann_roch_residual(const MetricGraph& g, const Divisor& d) {
    detail::RankSolver solver(g);
    const Divisor k = canonical_divisor(g);
    return solver.rank(d) - solver.rank(k - d) - (d.degree() - genus(g) + 1);
}

} // namespace tritrop
