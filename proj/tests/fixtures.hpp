// Shared graph fixtures and generators for the test suites.
#pragma once

#include "tritrop/graph.hpp"

#include <random>
#include <vector>

namespace fixtures {

using tritrop::GraphEdge;
using tritrop::GraphPoint;
using tritrop::MetricGraph;
using tritrop::Rational;

inline MetricGraph segment(Rational len = 1) { return MetricGraph(2, {{0, 1, len}}); }

inline MetricGraph circle(Rational len = 1) { return MetricGraph(1, {{0, 0, len}}); }

/// Two vertices joined by three parallel edges of equal length.
inline MetricGraph theta_graph(Rational len = 1) {
    return MetricGraph(2, {{0, 1, len}, {0, 1, len}, {0, 1, len}});
}

/// Six unit edges around the hexagon of the tropical elliptic cubic.
inline MetricGraph hexagon() {
    std::vector<GraphEdge> e;
    for (int i = 0; i < 6; ++i) e.push_back({i, (i + 1) % 6, Rational(1)});
    return MetricGraph(6, e);
}

/// Two unit-edge hexagons sharing the edge 0–1; vertices 0=(0,0), 1=(1,0),
/// upper hexagon 2..5 = (2,1),(2,2),(1,2),(0,1), lower 6..9 =
/// (-1,-1),(-1,-2),(0,-2),(1,-1). Edge ids: 0 shared, 1..5 upper, 6..10 lower.
inline MetricGraph two_hexagons() {
    return MetricGraph(10, {{0, 1, 1},
                            {1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {4, 5, 1}, {5, 0, 1},
                            {0, 6, 1}, {6, 7, 1}, {7, 8, 1}, {8, 9, 1}, {9, 1, 1}});
}

/// Random connected multigraph of the given genus with rational lengths whose
/// denominators are at most max_den.
inline MetricGraph random_graph(std::mt19937& rng, int g, int max_den = 8, int max_num = 12) {
    std::uniform_int_distribution<int> nv_dist(1, 4);
    const int n = nv_dist(rng);
    std::uniform_int_distribution<int> num(1, max_num);
    std::uniform_int_distribution<int> den(1, max_den);
    const auto length = [&] { return Rational(num(rng), den(rng)); };
    std::vector<GraphEdge> edges;
    for (int v = 1; v < n; ++v) {
        std::uniform_int_distribution<int> parent(0, v - 1);
        edges.push_back({parent(rng), v, length()});
    }
    std::uniform_int_distribution<int> any(0, n - 1);
    for (int i = 0; i < g; ++i) edges.push_back({any(rng), any(rng), length()});
    return MetricGraph(n, edges);
}

/// Random point of g: a vertex or a rational point inside an edge.
inline GraphPoint random_point(std::mt19937& rng, const MetricGraph& g, int parts = 8) {
    std::uniform_int_distribution<int> coin(0, 2);
    if (coin(rng) == 0 || g.edge_count() == 0) {
        std::uniform_int_distribution<int> v(0, g.vertex_count() - 1);
        return GraphPoint::vertex(v(rng));
    }
    std::uniform_int_distribution<int> e(0, g.edge_count() - 1);
    const int id = e(rng);
    std::uniform_int_distribution<int> k(1, parts - 1);
    return GraphPoint::on_edge(g, id, g.edge(id).length * Rational(k(rng), parts));
}

inline tritrop::Divisor random_divisor(std::mt19937& rng, const MetricGraph& g, int degree, int spread = 2,
                                       int parts = 8) {
    tritrop::Divisor d;
    std::uniform_int_distribution<int> c(-1, 1);
    int total = 0;
    for (int i = 0; i < spread; ++i) {
        const int k = c(rng);
        d.add(random_point(rng, g, parts), k);
        total += k;
    }
    d.add(random_point(rng, g, parts), degree - total);
    return d;
}

} // namespace fixtures
