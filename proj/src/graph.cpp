#include "p7col/graph.hpp"

#include <algorithm>
#include <bit>
#include <queue>
#include <sstream>

namespace p7col {

VertexSet::VertexSet(int universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

VertexSet::VertexSet(int universe, std::span<const Vertex> members) : VertexSet(universe) {
    for (Vertex v : members) insert(v);
}

int VertexSet::size() const {
    int total = 0;
    for (auto w : words_) total += std::popcount(w);
    return total;
}

bool VertexSet::empty() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::vector<Vertex> VertexSet::members() const {
    std::vector<Vertex> out;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        auto w = words_[i];
        while (w) {
            out.push_back(static_cast<Vertex>(i * 64 + std::countr_zero(w)));
            w &= w - 1;
        }
    }
    return out;
}

Vertex VertexSet::first() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i]) return static_cast<Vertex>(i * 64 + std::countr_zero(words_[i]));
    return -1;
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~other.words_[i]) return false;
    return true;
}

bool VertexSet::intersects(const VertexSet& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & other.words_[i]) return true;
    return false;
}

VertexSet& VertexSet::operator|=(const VertexSet& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
}

VertexSet& VertexSet::operator&=(const VertexSet& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
}

VertexSet& VertexSet::operator-=(const VertexSet& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
    return *this;
}

VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

Graph Graph::build(int n, std::span<const Edge> edges) {
    if (n < 0) throw GraphError(GraphErrorKind::OutOfRange, n, n, "negative vertex count");
    Graph g;
    g.n_ = n;
    g.adj_.assign(n, {});
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n) {
            std::ostringstream msg;
            msg << "edge (" << u << ", " << v << ") out of range for " << n << " vertices";
            throw GraphError(GraphErrorKind::OutOfRange, u, v, msg.str());
        }
        if (u == v) {
            std::ostringstream msg;
            msg << "loop at vertex " << u;
            throw GraphError(GraphErrorKind::LoopEdge, u, v, msg.str());
        }
        g.adj_[u].push_back(v);
        g.adj_[v].push_back(u);
    }
    for (Vertex v = 0; v < n; ++v) {
        auto& list = g.adj_[v];
        std::sort(list.begin(), list.end());
        auto dup = std::adjacent_find(list.begin(), list.end());
        if (dup != list.end()) {
            std::ostringstream msg;
            msg << "duplicate edge (" << std::min(v, *dup) << ", " << std::max(v, *dup) << ")";
            throw GraphError(GraphErrorKind::DuplicateEdge, std::min(v, *dup), std::max(v, *dup), msg.str());
        }
    }
    g.m_ = edges.size();
    if (n <= kMatrixLimit) {
        g.row_words_ = (static_cast<std::size_t>(n) + 63) / 64;
        g.matrix_.assign(g.row_words_ * n, 0);
        for (Vertex v = 0; v < n; ++v)
            for (Vertex w : g.adj_[v])
                g.matrix_[v * g.row_words_ + (w >> 6)] |= std::uint64_t{1} << (w & 63);
    }
    return g;
}

bool Graph::adjacent(Vertex u, Vertex v) const {
    if (!matrix_.empty()) return (matrix_[u * row_words_ + (v >> 6)] >> (v & 63)) & 1u;
    const auto& list = adj_[u];
    return std::binary_search(list.begin(), list.end(), v);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
    std::vector<Vertex> local(g.order(), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i) local[vertices[i]] = static_cast<Vertex>(i);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (Vertex w : g.neighbours(vertices[i]))
            if (local[w] > static_cast<Vertex>(i)) edges.emplace_back(static_cast<Vertex>(i), local[w]);
    return {Graph::build(static_cast<int>(vertices.size()), edges),
            std::vector<Vertex>(vertices.begin(), vertices.end())};
}

std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
    std::vector<std::vector<Vertex>> out;
    std::vector<char> seen(g.order(), 0);
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < g.order(); ++s) {
        if (seen[s]) continue;
        std::vector<Vertex> comp;
        seen[s] = 1;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (Vertex w : g.neighbours(v))
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

std::variant<Bipartition, OddCycle> bipartite_check(const Graph& g) {
    const int n = g.order();
    std::vector<int> side(n, -1);
    std::vector<Vertex> parent(n, -1);
    std::vector<int> depth(n, 0);
    std::queue<Vertex> queue;
    for (Vertex s = 0; s < n; ++s) {
        if (side[s] != -1) continue;
        side[s] = 0;
        queue.push(s);
        while (!queue.empty()) {
            Vertex v = queue.front();
            queue.pop();
            for (Vertex w : g.neighbours(v)) {
                if (side[w] == -1) {
                    side[w] = 1 - side[v];
                    parent[w] = v;
                    depth[w] = depth[v] + 1;
                    queue.push(w);
                } else if (side[w] == side[v]) {
                    // Tree paths from v and w up to their lowest common ancestor.
                    std::vector<Vertex> left{v}, right{w};
                    Vertex a = v, b = w;
                    while (depth[a] > depth[b]) left.push_back(a = parent[a]);
                    while (depth[b] > depth[a]) right.push_back(b = parent[b]);
                    while (a != b) {
                        left.push_back(a = parent[a]);
                        right.push_back(b = parent[b]);
                    }
                    right.pop_back();
                    OddCycle cycle(left.rbegin(), left.rend());
                    cycle.insert(cycle.end(), right.begin(), right.end());
                    return cycle;
                }
            }
        }
    }
    Bipartition parts{VertexSet(n), VertexSet(n)};
    for (Vertex v = 0; v < n; ++v) (side[v] == 0 ? parts.first : parts.second).insert(v);
    return parts;
}

bool is_cycle(const Graph& g, std::span<const Vertex> cycle) {
    const auto k = cycle.size();
    if (k < 3) return false;
    std::vector<Vertex> sorted(cycle.begin(), cycle.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    for (std::size_t i = 0; i < k; ++i) {
        Vertex v = cycle[i];
        if (v < 0 || v >= g.order()) return false;
        if (!g.adjacent(v, cycle[(i + 1) % k])) return false;
    }
    return true;
}

} // namespace p7col
