#include "helpers.hpp"

#include "p7col/recognition.hpp"
#include "p7col/skeleton.hpp"
#include "p7col/testkit.hpp"

#include <doctest.h>

using namespace p7col;
using namespace p7col::test;

namespace {

constexpr std::array<Vertex, 5> kAnchor{0, 1, 2, 3, 4};

Skeleton skeleton_of(const std::variant<Skeleton, PromiseViolation>& r) {
    REQUIRE(std::holds_alternative<Skeleton>(r));
    return std::get<Skeleton>(r);
}

VertexSet set_of(int n, std::vector<Vertex> members) { return VertexSet(n, members); }

// Connected component of g around its shortest odd cycle, with that cycle.
struct Anchored {
    Graph graph;
    std::array<Vertex, 5> cycle{};
};

std::optional<Anchored> anchored_component(const Graph& g) {
    for (const auto& comp : connected_components(g)) {
        auto sub = induced_subgraph(g, comp);
        const auto c = shortest_odd_cycle(sub.graph);
        if (!c || c->size() != 5) continue;
        Anchored a{std::move(sub.graph), {}};
        std::copy(c->begin(), c->end(), a.cycle.begin());
        return a;
    }
    return std::nullopt;
}

} // namespace

TEST_CASE("build_skeleton classifies single neighbours") {
    const Graph t = extend(cycle(5), 1, {{0, 5}, {2, 5}});
    const Skeleton& st = skeleton_of(build_skeleton(t, kAnchor));
    CHECK(st.t[1].members() == std::vector<Vertex>{5});
    for (int i : {0, 2, 3, 4}) CHECK(st.t[i].empty());

    const Graph d = extend(cycle(5), 1, {{0, 5}});
    const Skeleton& sd = skeleton_of(build_skeleton(d, kAnchor));
    CHECK(sd.d[0].members() == std::vector<Vertex>{5});
    CHECK(sd.s.size() == 6);
    CHECK(sd.w.empty());

    const Graph x = extend(cycle(5), 1, {{0, 5}, {1, 5}});
    const auto r = build_skeleton(x, kAnchor);
    REQUIRE(std::holds_alternative<PromiseViolation>(r));
    const auto& w = std::get<PromiseViolation>(r);
    CHECK(w.kind == ViolationKind::Triangle);
    CHECK(witness_is_valid(x, w));
}

TEST_CASE("build_skeleton rejects a non-C5 anchor") {
    const std::array<Vertex, 5> bad{0, 1, 2, 3, 5};
    CHECK_THROWS_AS((void)build_skeleton(extend(cycle(5), 1, {{0, 5}}), bad), std::invalid_argument);
}

TEST_CASE("wd_components examples") {
    const Graph one = extend(cycle(5), 2, {{0, 5}, {5, 6}});
    const Skeleton& sk = skeleton_of(build_skeleton(one, kAnchor));
    CHECK(sk.w.members() == std::vector<Vertex>{6});
    const auto comps = wd_components(one, sk, 0);
    REQUIRE(std::holds_alternative<std::vector<WdComponent>>(comps));
    const auto& list = std::get<std::vector<WdComponent>>(comps);
    REQUIRE(list.size() == 1);
    CHECK(list[0].vertices == std::vector<Vertex>{5, 6});
    CHECK(list[0].d_side == std::vector<Vertex>{5});
    CHECK(list[0].w_side == std::vector<Vertex>{6});

    const Graph both = extend(cycle(5), 3, {{0, 5}, {1, 6}, {5, 7}, {6, 7}});
    const Skeleton& sb = skeleton_of(build_skeleton(both, kAnchor));
    const auto bad = wd_components(both, sb, 0);
    REQUIRE(std::holds_alternative<PromiseViolation>(bad));
    CHECK(std::get<PromiseViolation>(bad).kind == ViolationKind::InducedP7);
    CHECK(witness_is_valid(both, std::get<PromiseViolation>(bad)));
    CHECK(check_promise(both).has_value());

    const Skeleton& plain = skeleton_of(build_skeleton(cycle(5), kAnchor));
    for (int i = 0; i < 5; ++i) CHECK(std::get<std::vector<WdComponent>>(wd_components(cycle(5), plain, i)).empty());
}

TEST_CASE("build_chain merges equal neighbourhoods and appends T_i") {
    // T_2 = {5, 6, 7}; components {8, 9} and {10, 11} see {5} and {5, 6}.
    const Graph g = extend(cycle(5), 7,
                           {{0, 5}, {2, 5}, {0, 6}, {2, 6}, {0, 7}, {2, 7}, {8, 9}, {5, 8}, {10, 11}, {5, 10}, {6, 10}});
    REQUIRE_FALSE(check_promise(g));
    const auto analysed = analyse_skeleton(g, kAnchor);
    REQUIRE(std::holds_alternative<SkeletonAnalysis>(analysed));
    const auto& a = std::get<SkeletonAnalysis>(analysed);
    REQUIRE(a.chains[1]);
    const Chain& chain = *a.chains[1];
    CHECK(chain.r == 2);
    CHECK(chain.v0 == 5);
    REQUIRE(chain.levels.size() == 4);
    const int n = g.order();
    CHECK(chain.levels[0] == set_of(n, {5}));
    CHECK(chain.levels[1] == set_of(n, {5}));
    CHECK(chain.levels[2] == set_of(n, {5, 6}));
    CHECK(chain.levels[3] == set_of(n, {5, 6, 7}));
}

TEST_CASE("build_chain on an untouched T_i is degenerate") {
    const Graph g = extend(cycle(5), 2, {{0, 5}, {2, 5}, {0, 6}, {2, 6}});
    const auto analysed = analyse_skeleton(g, kAnchor);
    REQUIRE(std::holds_alternative<SkeletonAnalysis>(analysed));
    const Chain& chain = *std::get<SkeletonAnalysis>(analysed).chains[1];
    CHECK(chain.r == 0);
    CHECK(chain.v0 == 5);
    REQUIRE(chain.levels.size() == 2);
    CHECK(chain.levels[0] == set_of(g.order(), {5}));
    CHECK(chain.levels[1] == set_of(g.order(), {5, 6}));
}

TEST_CASE("crossing neighbourhoods in T_i are a promise violation") {
    const Graph g = extend(cycle(5), 6, {{0, 5}, {2, 5}, {0, 6}, {2, 6}, {7, 8}, {5, 7}, {9, 10}, {6, 9}});
    const auto w = check_promise(g);
    REQUIRE(w);
    const auto built = build_skeleton(g, kAnchor);
    REQUIRE(std::holds_alternative<Skeleton>(built));
    const Skeleton& sk = std::get<Skeleton>(built);
    const auto wd = std::get<std::vector<WdComponent>>(wd_components(g, sk, 1));
    const auto chain = build_chain(g, sk, wd, 1);
    REQUIRE(std::holds_alternative<PromiseViolation>(chain));
    const auto& v = std::get<PromiseViolation>(chain);
    CHECK(v.kind == ViolationKind::InducedP7);
    CHECK(witness_is_valid(g, v));
}

TEST_CASE("build_chain requires a non-empty T_i") {
    const Skeleton& sk = skeleton_of(build_skeleton(cycle(5), kAnchor));
    CHECK_THROWS_AS((void)build_chain(cycle(5), sk, {}, 0), std::invalid_argument);
}

TEST_CASE("skeletons of generated instances satisfy the structural invariants") {
    int checked = 0, chains = 0;
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        GenSpec spec;
        spec.kind = GenKind::SkeletonBuilt;
        spec.seed = seed;
        spec.n = 8 + static_cast<int>(seed % 33);
        const auto anchored = anchored_component(generate(spec).graph);
        if (!anchored) continue;
        const Graph& g = anchored->graph;
        const int n = g.order();
        const auto analysed = analyse_skeleton(g, anchored->cycle);
        REQUIRE(std::holds_alternative<SkeletonAnalysis>(analysed));
        const auto& a = std::get<SkeletonAnalysis>(analysed);
        const Skeleton& sk = a.skeleton;
        ++checked;

        VertexSet cycle_set(n, std::vector<Vertex>(sk.c.begin(), sk.c.end()));
        VertexSet covered = cycle_set | sk.w;
        for (Vertex v = 0; v < n; ++v) {
            if (cycle_set.contains(v)) continue;
            int touches = 0;
            for (Vertex c : sk.c) touches += g.adjacent(v, c);
            int placed = 0;
            for (int i = 0; i < 5; ++i) placed += sk.t[i].contains(v) + sk.d[i].contains(v);
            CHECK(placed == (touches > 0 ? 1 : 0));
        }
        for (int i = 0; i < 5; ++i) {
            covered |= sk.t[i];
            covered |= sk.d[i];
            for (Vertex v : sk.t[i].members()) {
                CHECK(g.adjacent(v, sk.c[cyc5(i - 1)]));
                CHECK(g.adjacent(v, sk.c[cyc5(i + 1)]));
            }
        }
        for (const auto& comp : sk.components) {
            for (Vertex v : comp.vertices) covered.insert(v);
            for (Vertex v : comp.vertices)
                for (Vertex w : g.neighbours(v)) {
                    if (w < v || sk.s.contains(w)) continue;
                    for (int i = 0; i < 5; ++i) {
                        VertexSet seen(n);
                        for (Vertex x : {v, w})
                            for (Vertex t : g.neighbours(x))
                                if (sk.t[i].contains(t)) seen.insert(t);
                        CHECK(seen == comp.t_nbhd[i]);
                    }
                }
            CHECK_FALSE(comp.side_nbhd[0].intersects(comp.side_nbhd[1]));
            CHECK((!comp.side_nbhd[0].empty() || !comp.side_nbhd[1].empty()));
        }
        CHECK(covered.size() == n);

        for (int i = 0; i < 5; ++i) {
            if (sk.t[i].empty()) {
                CHECK_FALSE(a.chains[i]);
                continue;
            }
            REQUIRE(a.chains[i]);
            const Chain& ch = *a.chains[i];
            ++chains;
            CHECK(ch.levels.size() == static_cast<std::size_t>(ch.r + 2));
            CHECK(ch.levels.front() == VertexSet(n, std::vector<Vertex>{ch.v0}));
            CHECK(ch.levels.back() == sk.t[i]);
            CHECK(ch.levels[1].contains(ch.v0));
            for (int k = 1; k + 1 < static_cast<int>(ch.levels.size()); ++k) {
                CHECK(ch.levels[k].is_subset_of(ch.levels[k + 1]));
                // Distinct neighbourhoods grow strictly; the last may equal the sentinel T_i.
                if (k + 1 <= ch.r) CHECK(ch.levels[k].size() < ch.levels[k + 1].size());
            }
        }
    }
    CHECK(checked > 200);
    CHECK(chains > 0);
}

TEST_CASE("skeleton witnesses on mutated instances verify") {
    Rng rng(99);
    int witnesses = 0;
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        GenSpec spec;
        spec.kind = GenKind::SkeletonBuilt;
        spec.seed = seed;
        spec.n = 10 + static_cast<int>(seed % 25);
        const Graph base = generate(spec).graph;
        const Graph g = inject_violation(base, seed % 2 ? Injection::Triangle : Injection::InducedP7, rng);
        const auto anchored = anchored_component(g);
        if (!anchored) continue;
        const auto r = analyse_skeleton(anchored->graph, anchored->cycle);
        if (const auto* w = std::get_if<PromiseViolation>(&r)) {
            CHECK(witness_is_valid(anchored->graph, *w));
            witnesses += w->kind != ViolationKind::StructureBreach;
        }
    }
    CHECK(witnesses > 0);
}
