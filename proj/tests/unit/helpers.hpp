#pragma once

#include "p7col/engine.hpp"
#include "p7col/graph.hpp"

#include <algorithm>
#include <initializer_list>
#include <vector>

namespace p7col::test {

inline Graph graph_of(int n, std::initializer_list<Edge> edges) {
    std::vector<Edge> e(edges);
    return Graph::build(n, e);
}

inline Graph path(int n) {
    std::vector<Edge> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph::build(n, e);
}

inline Graph cycle(int n) {
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i) e.emplace_back(std::min(i, (i + 1) % n), std::max(i, (i + 1) % n));
    return Graph::build(n, e);
}

inline Graph complete(int n) {
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return Graph::build(n, e);
}

/// Graph plus extra vertices and edges.
inline Graph extend(const Graph& g, int extra, std::initializer_list<Edge> edges) {
    auto e = g.edges();
    e.insert(e.end(), edges.begin(), edges.end());
    return Graph::build(g.order() + extra, e);
}

/// Outer 5-cycle 0..4, spokes to 5..9, inner pentagram.
inline Graph petersen() {
    std::vector<Edge> e;
    for (int i = 0; i < 5; ++i) {
        e.emplace_back(std::min(i, (i + 1) % 5), std::max(i, (i + 1) % 5));
        e.emplace_back(i, i + 5);
        e.emplace_back(std::min(5 + i, 5 + (i + 2) % 5), std::max(5 + i, 5 + (i + 2) % 5));
    }
    return Graph::build(10, e);
}

/// Mycielskian of C5: cycle 0..4, shadows 5..9 (shadow i sees the cycle
/// neighbours of i), apex 10 adjacent to every shadow.
inline Graph grotzsch() {
    std::vector<Edge> e;
    for (int i = 0; i < 5; ++i) {
        const int a = (i + 4) % 5, b = (i + 1) % 5;
        e.emplace_back(std::min(i, b), std::max(i, b));
        e.emplace_back(a, 5 + i);
        e.emplace_back(b, 5 + i);
        e.emplace_back(5 + i, 10);
    }
    return Graph::build(11, e);
}

inline std::vector<ColourMask> full_lists(int n) { return std::vector<ColourMask>(n, kAllColours); }

inline ColourMask mask(std::initializer_list<Colour> colours) {
    ColourMask m = 0;
    for (Colour c : colours) m |= mask_of(c);
    return m;
}

} // namespace p7col::test
