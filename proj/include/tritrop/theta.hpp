// Theta characteristics of metric graphs via Zharkov's fire-spreading
// construction: one effective class per nonzero element of the F2 cycle
// space, plus the unique non-effective class.
#pragma once

#include "tritrop/graph.hpp"
#include "tritrop/parallel.hpp"

#include <optional>
#include <queue>
#include <vector>

namespace tritrop {

/// Element of the F2 cycle space: sorted edge ids of an even subgraph.
using Cycle = std::vector<int>;

struct ThetaCharacteristic {
    Divisor divisor;
    std::optional<Cycle> cycle; // empty for the non-effective class
    bool effective = false;
};

/// Edge sets of the fundamental cycles of a BFS spanning tree, ordered by the
/// id of the closing non-tree edge.
inline std::vector<Cycle> fundamental_cycles(const MetricGraph& g) {
    if (!g.is_connected()) throw DomainError("graph is disconnected");
    const int n = g.vertex_count();
    std::vector<std::vector<int>> inc(static_cast<std::size_t>(n));
    for (int e = 0; e < g.edge_count(); ++e) {
        inc[static_cast<std::size_t>(g.edge(e).u)].push_back(e);
        if (g.edge(e).v != g.edge(e).u) inc[static_cast<std::size_t>(g.edge(e).v)].push_back(e);
    }
    std::vector<int> parent_edge(static_cast<std::size_t>(n), -1);
    std::vector<int> depth(static_cast<std::size_t>(n), -1);
    std::vector<bool> tree(static_cast<std::size_t>(g.edge_count()), false);
    std::queue<int> bfs;
    bfs.push(0);
    depth[0] = 0;
    while (!bfs.empty()) {
        const int v = bfs.front();
        bfs.pop();
        for (const int e : inc[static_cast<std::size_t>(v)]) {
            const int w = g.edge(e).u == v ? g.edge(e).v : g.edge(e).u;
            if (depth[static_cast<std::size_t>(w)] >= 0) continue;
            depth[static_cast<std::size_t>(w)] = depth[static_cast<std::size_t>(v)] + 1;
            parent_edge[static_cast<std::size_t>(w)] = e;
            tree[static_cast<std::size_t>(e)] = true;
            bfs.push(w);
        }
    }
    const auto up = [&](int v) {
        const auto& e = g.edge(parent_edge[static_cast<std::size_t>(v)]);
        return e.u == v ? e.v : e.u;
    };
    std::vector<Cycle> out;
    for (int e = 0; e < g.edge_count(); ++e) {
        if (tree[static_cast<std::size_t>(e)]) continue;
        Cycle c{e};
        int a = g.edge(e).u;
        int b = g.edge(e).v;
        while (a != b) {
            if (depth[static_cast<std::size_t>(a)] < depth[static_cast<std::size_t>(b)]) std::swap(a, b);
            c.push_back(parent_edge[static_cast<std::size_t>(a)]);
            a = up(a);
        }
        std::sort(c.begin(), c.end());
        out.push_back(std::move(c));
    }
    return out;
}

/// All 2^g − 1 nonzero cycles; entry i − 1 is the F2 sum of the basis
/// cycles selected by the bits of i.
inline std::vector<Cycle> cycle_space(const MetricGraph& g) {
    const auto basis = fundamental_cycles(g);
    if (basis.size() > 20) throw DomainError("genus too large for cycle enumeration");
    std::vector<Cycle> out;
    const std::size_t total = std::size_t{1} << basis.size();
    for (std::size_t mask = 1; mask < total; ++mask) {
        std::vector<bool> in(static_cast<std::size_t>(g.edge_count()), false);
        for (std::size_t b = 0; b < basis.size(); ++b) {
            if ((mask >> b & 1U) == 0) continue;
            for (const int e : basis[b]) in[static_cast<std::size_t>(e)] = !in[static_cast<std::size_t>(e)];
        }
        Cycle c;
        for (int e = 0; e < g.edge_count(); ++e) {
            if (in[static_cast<std::size_t>(e)]) c.push_back(e);
        }
        out.push_back(std::move(c));
    }
    return out;
}

/// Whether every vertex meets an even number of edge ends of c.
inline bool is_cycle(const MetricGraph& g, const Cycle& c) {
    std::vector<int> parity(static_cast<std::size_t>(g.vertex_count()), 0);
    for (const int e : c) {
        if (e < 0 || e >= g.edge_count()) return false;
        parity[static_cast<std::size_t>(g.edge(e).u)] ^= 1;
        parity[static_cast<std::size_t>(g.edge(e).v)] ^= 1;
    }
    return std::all_of(parity.begin(), parity.end(), [](int p) { return p == 0; });
}

namespace detail {

/// Chips placed by a fire started simultaneously at the given vertices;
/// edges flagged in `burnt` are on fire from the start and carry no chips.
/// Sources receive no chips here.
inline Divisor fire_divisor(const MetricGraph& g, const std::vector<int>& sources, const std::vector<bool>& burnt) {
    const int n = g.vertex_count();
    std::vector<std::optional<Rational>> dist(static_cast<std::size_t>(n));
    using Item = std::pair<Rational, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (const int s : sources) {
        dist[static_cast<std::size_t>(s)] = Rational(0);
        pq.emplace(Rational(0), s);
    }
    while (!pq.empty()) {
        const auto [d, v] = pq.top();
        pq.pop();
        if (*dist[static_cast<std::size_t>(v)] < d) continue;
        for (int e = 0; e < g.edge_count(); ++e) {
            const auto& ed = g.edge(e);
            if (ed.u != v && ed.v != v) continue;
            const int w = ed.u == v ? ed.v : ed.u;
            const Rational nd = d + ed.length;
            auto& dw = dist[static_cast<std::size_t>(w)];
            if (!dw || nd < *dw) {
                dw = nd;
                pq.emplace(nd, w);
            }
        }
    }
    Divisor out;
    std::vector<int> incoming(static_cast<std::size_t>(n), 0);
    for (int e = 0; e < g.edge_count(); ++e) {
        if (burnt[static_cast<std::size_t>(e)]) continue;
        const auto& ed = g.edge(e);
        const Rational du = *dist[static_cast<std::size_t>(ed.u)];
        const Rational dw = *dist[static_cast<std::size_t>(ed.v)];
        if (abs(du - dw) < ed.length) {
            out.add(GraphPoint::on_edge(g, e, (ed.length + dw - du) / Rational(2)), 1);
        } else if (du + ed.length == dw) {
            ++incoming[static_cast<std::size_t>(ed.v)];
        } else {
            ++incoming[static_cast<std::size_t>(ed.u)];
        }
    }
    std::vector<bool> is_source(static_cast<std::size_t>(n), false);
    for (const int s : sources) is_source[static_cast<std::size_t>(s)] = true;
    for (int v = 0; v < n; ++v) {
        if (is_source[static_cast<std::size_t>(v)]) continue;
        out.add(GraphPoint::vertex(v), incoming[static_cast<std::size_t>(v)] - 1);
    }
    return out;
}

inline void check_half_canonical(const MetricGraph& g, const Divisor& d) {
    if (!is_equivalent(g, 2 * d, canonical_divisor(g))) throw InternalError("2D is not equivalent to K");
}

} // namespace detail

/// Effective theta characteristic of the nonzero cycle gamma.
inline ThetaCharacteristic zharkov_effective(const MetricGraph& g, const Cycle& gamma) {
    if (!g.is_connected()) throw DomainError("graph is disconnected");
    if (gamma.empty()) throw DomainError("cycle is zero");
    if (!is_cycle(g, gamma)) throw DomainError("edge set is not a cycle");
    std::vector<bool> burnt(static_cast<std::size_t>(g.edge_count()), false);
    std::vector<bool> on(static_cast<std::size_t>(g.vertex_count()), false);
    for (const int e : gamma) {
        burnt[static_cast<std::size_t>(e)] = true;
        on[static_cast<std::size_t>(g.edge(e).u)] = true;
        on[static_cast<std::size_t>(g.edge(e).v)] = true;
    }
    std::vector<int> sources;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (on[static_cast<std::size_t>(v)]) sources.push_back(v);
    }
    ThetaCharacteristic t;
    t.divisor = detail::fire_divisor(g, sources, burnt);
    // A vertex where γ passes k times is k − 1 coincident meeting points.
    std::vector<int> gamma_valence(static_cast<std::size_t>(g.vertex_count()), 0);
    for (const int e : gamma) {
        ++gamma_valence[static_cast<std::size_t>(g.edge(e).u)];
        ++gamma_valence[static_cast<std::size_t>(g.edge(e).v)];
    }
    for (const int v : sources) t.divisor.add(GraphPoint::vertex(v), gamma_valence[static_cast<std::size_t>(v)] / 2 - 1);
    Cycle sorted = gamma;
    std::sort(sorted.begin(), sorted.end());
    t.cycle = sorted;
    t.effective = true;
    if (!t.divisor.is_effective() || t.divisor.degree() != genus(g) - 1) {
        throw InternalError("effective theta has wrong shape");
    }
    detail::check_half_canonical(g, t.divisor);
    return t;
}

/// The non-effective theta characteristic: fire from the vertices of the
/// minimal model (valence ≠ 2), with a negative chip at each of them.
inline ThetaCharacteristic zharkov_non_effective(const MetricGraph& g) {
    const int gen = genus(g);
    if (gen < 1) throw DomainError("graph has genus 0");
    const auto val = g.valences();
    std::vector<int> sources;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (val[static_cast<std::size_t>(v)] != 2) sources.push_back(v);
    }
    if (sources.empty()) sources.push_back(0);
    ThetaCharacteristic t;
    t.divisor = detail::fire_divisor(g, sources, std::vector<bool>(static_cast<std::size_t>(g.edge_count()), false));
    for (const int s : sources) t.divisor.add(GraphPoint::vertex(s), -1);
    t.effective = false;
    if (t.divisor.degree() != gen - 1) throw InternalError("non-effective theta has wrong degree");
    detail::check_half_canonical(g, t.divisor);
    return t;
}

/// All 2^g theta characteristics: the effective ones in cycle_space order,
/// then the non-effective one.
inline std::vector<ThetaCharacteristic> all_theta_characteristics(const MetricGraph& g) {
    if (genus(g) < 1) throw DomainError("graph has genus 0");
    const auto cycles = cycle_space(g);
    std::vector<ThetaCharacteristic> out(cycles.size());
    parallel_for(cycles.size(), [&](std::size_t i) { out[i] = zharkov_effective(g, cycles[i]); });
    out.push_back(zharkov_non_effective(g));
    return out;
}

} // namespace tritrop
