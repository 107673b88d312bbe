#include "helpers.hpp"

#include "p7col/engine.hpp"
#include "p7col/testkit.hpp"

#include <doctest.h>

using namespace p7col;
using namespace p7col::test;

namespace {

constexpr std::array<Vertex, 5> kAnchor{0, 1, 2, 3, 4};

SkeletonAnalysis analysis_of(const Graph& g) {
    auto r = analyse_skeleton(g, kAnchor);
    REQUIRE(std::holds_alternative<SkeletonAnalysis>(r));
    return std::get<SkeletonAnalysis>(std::move(r));
}

std::vector<BranchDescriptor> all_branches(const BranchPlan& plan) {
    std::vector<BranchDescriptor> out;
    BranchEnumerator e(plan);
    while (auto b = e.next()) out.push_back(*b);
    return out;
}

} // namespace

TEST_CASE("colour masks") {
    CHECK(mask_of(1) == 0b001);
    CHECK(mask_of(3) == 0b100);
    CHECK(mask_size(kAllColours) == 3);
    CHECK(smallest_colour(0b110) == 2);
    CHECK(largest_colour(0b011) == 2);
    CHECK(mask_has(0b101, 3));
    CHECK_FALSE(mask_has(0b101, 2));
}

TEST_CASE("propagate examples") {
    const Graph edge = path(2);
    ListState a({mask({1}), mask({1, 2})});
    CHECK(propagate(a, edge));
    CHECK(a.mask(0) == mask({1}));
    CHECK(a.mask(1) == mask({2}));

    ListState b({mask({1}), mask({1})});
    CHECK_FALSE(propagate(b, edge));

    std::vector<ColourMask> lists(5, kAllColours);
    lists[4] = mask({3});
    ListState c(lists);
    CHECK(propagate(c, cycle(5)));
    CHECK(c.mask(0) == mask({1, 2}));
    CHECK(c.mask(3) == mask({1, 2}));
    CHECK(c.mask(1) == kAllColours);
    CHECK(c.mask(2) == kAllColours);
}

TEST_CASE("propagation is monotone and the trail replays it") {
    Rng rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        GenSpec spec;
        spec.kind = GenKind::SkeletonBuilt;
        spec.seed = trial;
        spec.n = 15 + trial % 20;
        const Graph g = generate(spec).graph;
        const auto initial = random_lists(g.order(), rng, 1, 3);
        ListState state(initial, true);
        const bool ok = propagate(state, g);
        for (Vertex v = 0; v < g.order(); ++v) CHECK((state.mask(v) & ~initial[v]) == 0);
        if (!ok) continue;
        (void)eliminate_safe(state, g);
        auto replay = initial;
        for (const auto& e : state.trail()) {
            CHECK(mask_has(replay[e.vertex], e.removed));
            replay[e.vertex] &= static_cast<ColourMask>(~mask_of(e.removed));
        }
        CHECK(replay == state.masks());
    }
}

TEST_CASE("eliminate_safe examples") {
    const Graph star = graph_of(3, {{0, 1}, {0, 2}});
    ListState a({kAllColours, mask({1, 2}), mask({1, 2})});
    const auto safe = eliminate_safe(a, star);
    REQUIRE(safe.size() == 1);
    CHECK(safe[0] == std::pair<Vertex, Colour>{0, 3});
    CHECK(a.mask(0) == mask({3}));

    const Graph lone = Graph::build(1, {});
    ListState b({kAllColours});
    CHECK(eliminate_safe(b, lone) == std::vector<std::pair<Vertex, Colour>>{{0, 1}});

    ListState c({kAllColours, mask({1, 2}), mask({2, 3})});
    CHECK(eliminate_safe(c, star).empty());
    CHECK(c.mask(0) == kAllColours);
    CHECK(full_list_vertices(c) == std::vector<Vertex>{0});
}

TEST_CASE("residual_to_2sat examples") {
    const Graph edge = path(2);
    ListState same({mask({1, 2}), mask({1, 2})});
    const auto r1 = residual_to_2sat(same, edge);
    CHECK(r1.instance.var_count() == 2);
    CHECK(r1.instance.clauses().size() == 2);
    const auto a1 = solve_2sat(r1.instance);
    REQUIRE(a1);
    CHECK((*a1)[0] != (*a1)[1]);
    const auto f = read_colouring(same, r1, *a1);
    CHECK(f[0] != f[1]);

    ListState overlap({mask({1, 2}), mask({2, 3})});
    CHECK(residual_to_2sat(overlap, edge).instance.clauses().size() == 1);

    ListState decided({mask({1}), mask({2})});
    const auto r3 = residual_to_2sat(decided, edge);
    CHECK(r3.instance.var_count() == 0);
    CHECK(solve_2sat(r3.instance).has_value());

    ListState full({kAllColours, mask({1, 2})});
    CHECK_THROWS_AS((void)residual_to_2sat(full, edge), PreconditionBreach);

    ListState clash({mask({1}), mask({1, 2})});
    CHECK_THROWS_AS((void)residual_to_2sat(clash, edge), PreconditionBreach);
}

TEST_CASE("enumerate_c5_colourings") {
    std::array<ColourMask, 5> full;
    full.fill(kAllColours);
    const auto all = enumerate_c5_colourings(full);
    int brute = 0;
    for (int code = 0; code < 243; ++code) {
        std::array<int, 5> c{};
        for (int i = 0, x = code; i < 5; ++i, x /= 3) c[i] = x % 3;
        bool proper = true;
        for (int i = 0; i < 5; ++i) proper = proper && c[i] != c[(i + 1) % 5];
        brute += proper;
    }
    CHECK(brute == 30);
    CHECK(all.size() == 30);
    CHECK(std::is_sorted(all.begin(), all.end()));
    CHECK(all.front() == C5Colouring{1, 2, 1, 2, 3});

    const std::array<ColourMask, 5> forced{mask({1}), mask({2}), mask({1}), mask({2}), mask({3})};
    CHECK(enumerate_c5_colourings(forced) == std::vector<C5Colouring>{{1, 2, 1, 2, 3}});

    auto clash = full;
    clash[0] = clash[1] = mask({1});
    CHECK(enumerate_c5_colourings(clash).empty());
}

TEST_CASE("palette_analysis") {
    const Palette p = palette_analysis({1, 2, 1, 2, 3});
    CHECK(p.t_options == std::array<ColourMask, 5>{mask({1}), mask({2, 3}), mask({1, 3}), mask({2}), mask({3})});
    CHECK(p.d_options[0] == mask({2, 3}));
    CHECK(p.d_options[4] == mask({1, 2}));
    CHECK(p.open_t == std::array<int, 2>{1, 2});
    CHECK(p.shared == 3);
    CHECK(p.own == std::array<Colour, 2>{2, 1});
    CHECK(p.free_d == std::array<int, 3>{0, 3, 4});

    // Swapping colours 1 and 2 permutes the palettes.
    const Palette swapped = palette_analysis({2, 1, 2, 1, 3});
    CHECK(swapped.t_options == std::array<ColourMask, 5>{mask({2}), mask({1, 3}), mask({2, 3}), mask({1}), mask({3})});
    CHECK(swapped.open_t == p.open_t);
    CHECK(swapped.shared == 3);

    const Palette q = palette_analysis({2, 3, 2, 3, 1});
    CHECK(q.open_t == std::array<int, 2>{1, 2});
    CHECK(q.shared == 1);

    CHECK_THROWS_AS((void)palette_analysis({1, 2, 1, 2, 1}), std::invalid_argument);
}

TEST_CASE("branch enumeration counts") {
    const C5Colouring col{1, 2, 1, 2, 3};
    {
        const auto a = analysis_of(cycle(5));
        const BranchPlan plan(a, palette_analysis(col));
        CHECK(all_branches(plan).size() == 1);
        CHECK(branch_count_formula(a, plan.palette()) == 1);
    }
    {
        // |T_2| = 3 with r = 0: c, d, and a/b for each w in T_2 - {v0}.
        const Graph g = extend(cycle(5), 3, {{0, 5}, {2, 5}, {0, 6}, {2, 6}, {0, 7}, {2, 7}});
        const auto a = analysis_of(g);
        REQUIRE(a.chains[1]);
        CHECK(a.chains[1]->r == 0);
        const BranchPlan plan(a, palette_analysis(col));
        const auto branches = all_branches(plan);
        CHECK(branches.size() == 6);
        CHECK(branch_count_formula(a, plan.palette()) == 6);
        std::string tags;
        for (const auto& b : branches) tags += static_cast<char>(b.cases[0].tag);
        CHECK(tags == "cdaabb");
        CHECK(branches[2].cases[0].witness == 6);
        CHECK(branches[3].cases[0].witness == 7);
    }
    {
        const Graph g = extend(cycle(5), 1, {{4, 5}});
        const auto a = analysis_of(g);
        const BranchPlan plan(a, palette_analysis(col));
        const auto branches = all_branches(plan);
        REQUIRE(branches.size() == 2);
        CHECK(branches[0].cases[4].tag == CaseTag::G);
        CHECK(branches[1].cases[4].tag == CaseTag::H);
    }
}

TEST_CASE("apply_branch seeds the cases") {
    const C5Colouring col{1, 2, 1, 2, 3};
    const Graph g = extend(cycle(5), 5, {{0, 5}, {2, 5}, {0, 6}, {2, 6}, {0, 7}, {2, 7}, {4, 8}, {4, 9}});
    const auto a = analysis_of(g);
    const BranchPlan plan(a, palette_analysis(col));
    const auto branches = all_branches(plan);
    const auto find = [&](CaseTag t0, int w0, CaseTag t4, int w4) {
        for (const auto& b : branches)
            if (b.cases[0].tag == t0 && b.cases[0].witness == w0 && b.cases[4].tag == t4 && b.cases[4].witness == w4)
                return b;
        FAIL("branch not found");
        return branches.front();
    };
    const ListState base(full_lists(g.order()));

    ListState c = base;
    REQUIRE(apply_branch(c, find(CaseTag::C, -1, CaseTag::G, -1), plan, a.skeleton));
    for (Vertex t : {5, 6, 7}) CHECK(c.mask(t) == mask({2}));
    for (Vertex d : {8, 9}) CHECK(c.mask(d) == mask({1}));
    for (int i = 0; i < 5; ++i) CHECK(c.mask(i) == mask_of(col[i]));

    ListState ak = base;
    REQUIRE(apply_branch(ak, find(CaseTag::A, 6, CaseTag::E, 9), plan, a.skeleton));
    CHECK(ak.mask(5) == mask({2}));
    CHECK(ak.mask(6) == mask({3}));
    CHECK(ak.mask(7) == mask({2, 3}));
    CHECK(ak.mask(8) == mask({1}));
    CHECK(ak.mask(9) == mask({2}));

    const auto seeds = branch_seeds(find(CaseTag::A, 6, CaseTag::E, 9), plan);
    CHECK(seeds.size() == 5 + 2 + 2);
    CHECK(seeds.front() == std::pair<Vertex, Colour>{0, 1});
}

TEST_CASE("colour_blownup_c7 examples") {
    GenSpec spec;
    spec.kind = GenKind::BlownupC7;
    spec.sizes = {2, 1, 3, 1, 2, 2, 1};
    const Generated gen = generate(spec);
    const Graph& g = gen.graph;
    const auto c = shortest_odd_cycle(g);
    REQUIRE(c);
    const auto dec_r = recognize_blownup_c7(g, std::span<const Vertex, 7>(c->data(), 7));
    REQUIRE(std::holds_alternative<TwinDecomposition>(dec_r));
    const auto& dec = std::get<TwinDecomposition>(dec_r);

    auto lists = full_lists(g.order());
    const auto f = colour_blownup_c7(dec, lists);
    REQUIRE(f);
    CHECK(verify_colouring(g, lists, *f));
    const std::array<Colour, 7> pattern{1, 2, 1, 2, 1, 2, 3};
    for (int i = 0; i < 7; ++i)
        for (Vertex v : dec.classes[i]) CHECK((*f)[v] == pattern[i]);

    auto only3 = lists;
    for (Vertex v : dec.classes[0]) only3[v] = mask({3});
    const auto f3 = colour_blownup_c7(dec, only3);
    REQUIRE(f3);
    CHECK(verify_colouring(g, only3, *f3));
    CHECK(oracle_solve(g, only3).has_value());

    auto clash = lists;
    for (int i : {2, 3})
        for (Vertex v : dec.classes[i]) clash[v] = mask({1});
    CHECK_FALSE(colour_blownup_c7(dec, clash));
    CHECK_FALSE(oracle_solve(g, clash));
}

TEST_CASE("colour_blownup_c7 agrees with the oracle") {
    Rng rng(77);
    for (int trial = 0; trial < 300; ++trial) {
        GenSpec spec;
        spec.kind = GenKind::BlownupC7;
        spec.seed = trial;
        spec.n = rng.between(7, 18);
        const Graph g = generate(spec).graph;
        const auto c = shortest_odd_cycle(g);
        const auto dec = std::get<TwinDecomposition>(recognize_blownup_c7(g, std::span<const Vertex, 7>(c->data(), 7)));
        const auto lists = random_lists(g.order(), rng, 1, 4);
        const auto f = colour_blownup_c7(dec, lists);
        CHECK(f.has_value() == oracle_solve(g, lists).has_value());
        if (f) CHECK(verify_colouring(g, lists, *f));
    }
}

TEST_CASE("verify_colouring examples") {
    const Graph c5 = cycle(5);
    const auto lists = full_lists(5);
    CHECK(verify_colouring(c5, lists, std::vector<Colour>{1, 2, 1, 2, 3}));
    CHECK_FALSE(verify_colouring(c5, lists, std::vector<Colour>{1, 1, 2, 1, 2}));
    auto narrow = lists;
    narrow[4] = mask({1, 2});
    CHECK_FALSE(verify_colouring(c5, narrow, std::vector<Colour>{1, 2, 1, 2, 3}));
    CHECK_FALSE(verify_colouring(c5, lists, std::vector<Colour>{1, 2, 1, 2}));
}

TEST_CASE("solve examples") {
    const Outcome sat = solve(cycle(5), full_lists(5));
    REQUIRE(sat.colourable());
    CHECK(sat.colouring() == std::vector<Colour>{1, 2, 1, 2, 3});

    const Outcome unsat = solve(cycle(5), std::vector<ColourMask>(5, mask({1, 2})));
    CHECK(unsat.uncolourable());

    const Outcome tri = solve(complete(3), full_lists(3));
    REQUIRE(tri.invalid());
    CHECK(tri.violation().kind == ViolationKind::Triangle);

    const Outcome c9 = solve(cycle(9), full_lists(9));
    REQUIRE(c9.invalid());
    CHECK(c9.violation().kind == ViolationKind::InducedP7);
    CHECK(witness_is_valid(cycle(9), c9.violation()));

    const std::vector<ColourMask> loose{mask({2}), kAllColours, mask({1, 3})};
    const Outcome edgeless = solve(Graph::build(3, {}), loose);
    REQUIRE(edgeless.colourable());
    CHECK(verify_colouring(Graph::build(3, {}), loose, edgeless.colouring()));
    CHECK(edgeless.colouring()[1] == 1);

    CHECK_THROWS_AS((void)solve(cycle(5), full_lists(4)), std::invalid_argument);
}

TEST_CASE("Groetzsch graph is not 3-colourable") {
    const Graph g = grotzsch();
    const auto lists = full_lists(g.order());
    CHECK_FALSE(oracle_solve(g, lists));
    const auto promise = check_promise(g);
    SolveOptions verify;
    verify.mode = Mode::Verify;
    const Outcome o = solve(g, lists, verify);
    if (promise) {
        REQUIRE(o.invalid());
        CHECK(witness_is_valid(g, o.violation()));
    } else {
        CHECK(o.uncolourable());
    }
}

TEST_CASE("bipartite components with lists use the fallback") {
    const Graph c6 = cycle(6);
    std::vector<ColourMask> lists(6, kAllColours);
    lists[0] = mask({1, 2});
    lists[3] = mask({2, 3});
    const Outcome o = solve(c6, lists);
    REQUIRE(o.colourable());
    CHECK(verify_colouring(c6, lists, o.colouring()));
    CHECK(o.stats.fallback_activations == 1);

    const Outcome full = solve(c6, full_lists(6));
    REQUIRE(full.colourable());
    CHECK(full.stats.fallback_activations == 0);
    CHECK(full.colouring() == std::vector<Colour>{1, 2, 1, 2, 1, 2});
}

TEST_CASE("kernel, reference and thread counts agree") {
    Rng rng(5);
    int coloured = 0;
    for (int trial = 0; trial < 150; ++trial) {
        GenSpec spec;
        spec.kind = GenKind::SkeletonBuilt;
        spec.seed = 1000 + trial;
        spec.n = 10 + trial % 30;
        const Graph g = generate(spec).graph;
        const auto lists = random_lists(g.order(), rng, 2, 3);
        SolveOptions serial, wide, reference, debug;
        wide.threads = 4;
        reference.reference_kernel = true;
        debug.debug_checks = true;
        const Outcome a = solve(g, lists, serial);
        const Outcome b = solve(g, lists, wide);
        const Outcome r = solve(g, lists, reference);
        const Outcome d = solve(g, lists, debug);
        REQUIRE(a.result.index() == b.result.index());
        REQUIRE(a.result.index() == r.result.index());
        REQUIRE(a.result.index() == d.result.index());
        if (a.colourable()) {
            ++coloured;
            CHECK(a.colouring() == b.colouring());
            CHECK(a.colouring() == r.colouring());
            CHECK(verify_colouring(g, lists, a.colouring()));
        }
        CHECK(a.stats.branches == b.stats.branches);
        CHECK(a.stats.propagations == b.stats.propagations);
        CHECK(a.stats.sat_instances == b.stats.sat_instances);
        CHECK(a.stats.branches == r.stats.branches);
        CHECK(a.stats.survived == r.stats.survived);
        CHECK(a.stats.sat_instances == r.stats.sat_instances);
        CHECK(a.uncolourable() == !oracle_solve(g, lists).has_value());
    }
    CHECK(coloured > 0);
}

TEST_CASE("branch search kernels agree per anchor colouring") {
    for (int trial = 0; trial < 60; ++trial) {
        GenSpec spec;
        spec.kind = GenKind::SkeletonBuilt;
        spec.seed = 500 + trial;
        spec.n = 20;
        const Graph full = generate(spec).graph;
        const auto comps = connected_components(full);
        const auto sub = induced_subgraph(full, comps.front());
        const Graph& g = sub.graph;
        const auto c = shortest_odd_cycle(g);
        if (!c || c->size() != 5) continue;
        const auto analysed = analyse_skeleton(g, std::span<const Vertex, 5>(c->data(), 5));
        const auto& a = std::get<SkeletonAnalysis>(analysed);
        const ListState base(full_lists(g.order()));
        for (const auto& col : enumerate_c5_colourings({7, 7, 7, 7, 7})) {
            const BranchPlan plan(a, palette_analysis(col));
            const auto ref = search_branches_reference(g, plan, a.skeleton, base);
            const auto ker = search_branches(g, plan, a.skeleton, base, 3);
            CHECK(ref.kind == ker.kind);
            CHECK(ref.branch == ker.branch);
            CHECK(ref.colouring == ker.colouring);
            CHECK(ref.stats.enumerated == ker.stats.enumerated);
            CHECK(ref.stats.survived == ker.stats.survived);
            CHECK(ref.stats.sat_instances == ker.stats.sat_instances);
            CHECK(ref.kind != BranchSearchResult::Kind::ClaimBreach);
        }
    }
}
