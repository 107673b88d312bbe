#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace p7col {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

enum class GraphErrorKind { LoopEdge, OutOfRange, DuplicateEdge };

class GraphError : public std::invalid_argument {
public:
    GraphError(GraphErrorKind kind, Vertex u, Vertex v, const std::string& what)
        : std::invalid_argument(what), kind_(kind), u_(u), v_(v) {}

    GraphErrorKind kind() const { return kind_; }
    Vertex first() const { return u_; }
    Vertex second() const { return v_; }

private:
    GraphErrorKind kind_;
    Vertex u_;
    Vertex v_;
};

/// Membership bitset over the vertices 0..n-1 of a fixed graph.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(int universe);
    VertexSet(int universe, std::span<const Vertex> members);

    int universe() const { return universe_; }
    bool contains(Vertex v) const { return (words_[v >> 6] >> (v & 63)) & 1u; }
    void insert(Vertex v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
    void erase(Vertex v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }

    int size() const;
    bool empty() const;
    std::vector<Vertex> members() const;
    /// Smallest member, or -1 when empty.
    Vertex first() const;

    bool is_subset_of(const VertexSet& other) const;
    bool intersects(const VertexSet& other) const;
    VertexSet& operator|=(const VertexSet& other);
    VertexSet& operator&=(const VertexSet& other);
    VertexSet& operator-=(const VertexSet& other);

    friend bool operator==(const VertexSet&, const VertexSet&) = default;

    std::span<const std::uint64_t> words() const { return words_; }

private:
    int universe_ = 0;
    std::vector<std::uint64_t> words_;
};

VertexSet operator|(VertexSet a, const VertexSet& b);
VertexSet operator&(VertexSet a, const VertexSet& b);
VertexSet operator-(VertexSet a, const VertexSet& b);

/// Immutable simple undirected graph on dense vertex ids 0..n-1.
///
/// Neighbour lists are sorted. Edge queries are answered by a bit matrix
/// when n <= kMatrixLimit and by binary search in the neighbour list above.
class Graph {
public:
    static constexpr int kMatrixLimit = 4096;

    Graph() = default;

    /// Throws GraphError on loops, out-of-range endpoints and repeated edges.
    static Graph build(int n, std::span<const Edge> edges);

    int order() const { return n_; }
    std::size_t size() const { return m_; }
    const std::vector<Vertex>& neighbours(Vertex v) const { return adj_[v]; }
    int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
    bool adjacent(Vertex u, Vertex v) const;

    bool has_matrix() const { return !matrix_.empty(); }
    /// Row of the bit matrix; only valid when has_matrix().
    std::span<const std::uint64_t> row(Vertex v) const {
        return {matrix_.data() + static_cast<std::size_t>(v) * row_words_, row_words_};
    }

    VertexSet neighbourhood(Vertex v) const { return VertexSet(n_, adj_[v]); }
    /// Edges (u, v) with u < v, in lexicographic order.
    std::vector<Edge> edges() const;

private:
    int n_ = 0;
    std::size_t m_ = 0;
    std::vector<std::vector<Vertex>> adj_;
    std::size_t row_words_ = 0;
    std::vector<std::uint64_t> matrix_;
};

/// G[vertices] with the map back to the parent ids (to_parent[i] is the
/// parent id of local vertex i). Local ids follow the order of `vertices`.
struct InducedSubgraph {
    Graph graph;
    std::vector<Vertex> to_parent;
};

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices);

/// Components in order of their smallest member; members ascending.
std::vector<std::vector<Vertex>> connected_components(const Graph& g);

struct Bipartition {
    VertexSet first;
    VertexSet second;
};

using OddCycle = std::vector<Vertex>;

/// A 2-colouring of every component (the smallest vertex of a component
/// goes to `first`), or an odd cycle found by the search.
std::variant<Bipartition, OddCycle> bipartite_check(const Graph& g);

bool is_cycle(const Graph& g, std::span<const Vertex> cycle);

} // namespace p7col
