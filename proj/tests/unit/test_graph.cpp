#include "helpers.hpp"

#include "p7col/testkit.hpp"

#include <doctest.h>

#include <set>

using namespace p7col;
using namespace p7col::test;

TEST_CASE("build_graph accepts simple graphs") {
    const Graph p3 = graph_of(3, {{0, 1}, {1, 2}});
    CHECK(p3.order() == 3);
    CHECK(p3.size() == 2);
    CHECK(p3.neighbours(1) == std::vector<Vertex>{0, 2});

    const Graph trivial = Graph::build(1, {});
    CHECK(trivial.order() == 1);
    CHECK(trivial.size() == 0);
}

TEST_CASE("build_graph rejects malformed edges") {
    auto kind_of = [](int n, std::initializer_list<Edge> edges) {
        try {
            (void)graph_of(n, edges);
        } catch (const GraphError& e) {
            return e.kind();
        }
        FAIL("no error raised");
        return GraphErrorKind::LoopEdge;
    };
    CHECK(kind_of(2, {{0, 0}}) == GraphErrorKind::LoopEdge);
    CHECK(kind_of(2, {{0, 2}}) == GraphErrorKind::OutOfRange);
    CHECK(kind_of(2, {{-1, 0}}) == GraphErrorKind::OutOfRange);
    CHECK(kind_of(3, {{0, 1}, {1, 0}}) == GraphErrorKind::DuplicateEdge);
}

TEST_CASE("adjacency_query") {
    const Graph c5 = cycle(5);
    CHECK(c5.adjacent(0, 1));
    CHECK_FALSE(c5.adjacent(0, 2));
    for (Vertex v = 0; v < 5; ++v) CHECK_FALSE(c5.adjacent(v, v));
}

TEST_CASE("adjacency is symmetric and degrees sum to twice the edge count") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = rng.between(1, 50);
        std::vector<Edge> edges;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.chance(1, 5)) edges.emplace_back(u, v);
        const Graph g = Graph::build(n, edges);
        std::size_t degree_sum = 0;
        for (Vertex u = 0; u < n; ++u) {
            degree_sum += g.degree(u);
            CHECK(std::is_sorted(g.neighbours(u).begin(), g.neighbours(u).end()));
            for (Vertex v = 0; v < n; ++v) CHECK(g.adjacent(u, v) == g.adjacent(v, u));
        }
        CHECK(degree_sum == 2 * g.size());
        CHECK(g.edges() == edges);
    }
}

TEST_CASE("graphs above the matrix limit answer edge queries by search") {
    const int n = Graph::kMatrixLimit + 10;
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    const Graph g = Graph::build(n, edges);
    CHECK_FALSE(g.has_matrix());
    CHECK(g.adjacent(n - 2, n - 1));
    CHECK(g.adjacent(n - 1, n - 2));
    CHECK_FALSE(g.adjacent(0, n - 1));
}

TEST_CASE("VertexSet operations") {
    VertexSet a(130, std::vector<Vertex>{1, 64, 129});
    VertexSet b(130, std::vector<Vertex>{64, 100});
    CHECK(a.size() == 3);
    CHECK(a.first() == 1);
    CHECK((a & b).members() == std::vector<Vertex>{64});
    CHECK((a | b).size() == 4);
    CHECK((a - b).members() == std::vector<Vertex>{1, 129});
    CHECK(a.intersects(b));
    CHECK((a & b).is_subset_of(a));
    CHECK_FALSE(a.is_subset_of(b));
    CHECK(VertexSet(10).empty());
    CHECK(VertexSet(10).first() == -1);
}

TEST_CASE("connected_components") {
    const Graph c5k2 = extend(cycle(5), 2, {{5, 6}});
    const auto parts = connected_components(c5k2);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].size() == 5);
    CHECK(parts[1] == std::vector<Vertex>{5, 6});

    CHECK(connected_components(cycle(7)).size() == 1);
    CHECK(connected_components(Graph::build(3, {})).size() == 3);
}

TEST_CASE("connected_components partition the vertices and no edge crosses parts") {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = rng.between(1, 40);
        std::vector<Edge> edges;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.chance(1, 20)) edges.emplace_back(u, v);
        const Graph g = Graph::build(n, edges);
        std::vector<int> part(n, -1);
        const auto parts = connected_components(g);
        for (std::size_t i = 0; i < parts.size(); ++i)
            for (Vertex v : parts[i]) {
                CHECK(part[v] == -1);
                part[v] = static_cast<int>(i);
            }
        for (int p : part) CHECK(p >= 0);
        for (auto [u, v] : edges) CHECK(part[u] == part[v]);
        for (std::size_t i = 1; i < parts.size(); ++i) CHECK(parts[i - 1].front() < parts[i].front());
    }
}

TEST_CASE("bipartite_check") {
    const auto c4 = bipartite_check(cycle(4));
    REQUIRE(std::holds_alternative<Bipartition>(c4));
    CHECK(std::get<Bipartition>(c4).first.members() == std::vector<Vertex>{0, 2});
    CHECK(std::get<Bipartition>(c4).second.members() == std::vector<Vertex>{1, 3});

    const auto c5 = bipartite_check(cycle(5));
    REQUIRE(std::holds_alternative<OddCycle>(c5));
    CHECK(std::get<OddCycle>(c5).size() == 5);

    const auto single = bipartite_check(Graph::build(1, {}));
    REQUIRE(std::holds_alternative<Bipartition>(single));
    CHECK(std::get<Bipartition>(single).first.members() == std::vector<Vertex>{0});
    CHECK(std::get<Bipartition>(single).second.empty());
}

TEST_CASE("bipartite_check returns a bipartition or a genuine odd cycle") {
    Rng rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = rng.between(1, 30);
        std::vector<Edge> edges;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.chance(1, 12)) edges.emplace_back(u, v);
        const Graph g = Graph::build(n, edges);
        const auto result = bipartite_check(g);
        if (const auto* sides = std::get_if<Bipartition>(&result)) {
            for (auto [u, v] : edges) CHECK(sides->first.contains(u) != sides->first.contains(v));
            CHECK((sides->first | sides->second).size() == n);
            CHECK_FALSE(sides->first.intersects(sides->second));
        } else {
            const auto& c = std::get<OddCycle>(result);
            CHECK(c.size() % 2 == 1);
            CHECK(std::set<Vertex>(c.begin(), c.end()).size() == c.size());
            for (std::size_t i = 0; i < c.size(); ++i) CHECK(g.adjacent(c[i], c[(i + 1) % c.size()]));
            CHECK(is_cycle(g, c));
        }
    }
}

TEST_CASE("induced_subgraph keeps the order of the given vertices") {
    const Graph c5 = cycle(5);
    const std::vector<Vertex> keep{3, 1, 2};
    const auto sub = induced_subgraph(c5, keep);
    CHECK(sub.to_parent == keep);
    CHECK(sub.graph.order() == 3);
    CHECK(sub.graph.size() == 2);
    CHECK(sub.graph.adjacent(0, 2));
    CHECK(sub.graph.adjacent(1, 2));
    CHECK_FALSE(sub.graph.adjacent(0, 1));
}
