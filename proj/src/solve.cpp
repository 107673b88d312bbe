#include "p7col/engine.hpp"

#include <chrono>

namespace p7col {

std::optional<std::vector<Colour>> colour_blownup_c7(const TwinDecomposition& dec, std::span<const ColourMask> lists) {
    // feasible[i][s]: every member of class i can take a colour from subset s.
    std::array<std::array<bool, 8>, 7> feasible{};
    for (int i = 0; i < 7; ++i)
        for (ColourMask s = 1; s <= kAllColours; ++s) {
            bool ok = true;
            for (Vertex v : dec.classes[i]) ok = ok && (lists[v] & s) != 0;
            feasible[i][s] = ok;
        }
    for (ColourMask first = 1; first <= kAllColours; ++first) {
        if (!feasible[0][first]) continue;
        // reach[i][s]: classes i..6 can be completed from s at class i.
        std::array<std::array<bool, 8>, 7> reach{};
        for (ColourMask s = 1; s <= kAllColours; ++s) reach[6][s] = feasible[6][s] && (s & first) == 0;
        for (int i = 5; i >= 1; --i)
            for (ColourMask s = 1; s <= kAllColours; ++s) {
                if (!feasible[i][s]) continue;
                for (ColourMask t = 1; t <= kAllColours && !reach[i][s]; ++t)
                    reach[i][s] = reach[i + 1][t] && (s & t) == 0;
            }
        std::array<ColourMask, 7> chosen{first};
        bool ok = true;
        for (int i = 1; i < 7 && ok; ++i) {
            chosen[i] = 0;
            for (ColourMask s = 1; s <= kAllColours; ++s)
                if (reach[i][s] && (s & chosen[i - 1]) == 0) {
                    chosen[i] = s;
                    break;
                }
            ok = chosen[i] != 0;
        }
        if (!ok) continue;
        std::vector<Colour> out(lists.size(), 0);
        for (int i = 0; i < 7; ++i)
            for (Vertex v : dec.classes[i]) out[v] = smallest_colour(lists[v] & chosen[i]);
        return out;
    }
    return std::nullopt;
}

bool verify_colouring(const Graph& g, std::span<const ColourMask> lists, std::span<const Colour> colouring) {
    const auto n = static_cast<std::size_t>(g.order());
    if (lists.size() != n || colouring.size() != n) return false;
    for (Vertex v = 0; v < g.order(); ++v) {
        const Colour c = colouring[v];
        if (c < 1 || c > 3 || !mask_has(lists[v], c)) return false;
        for (Vertex w : g.neighbours(v))
            if (colouring[w] == c) return false;
    }
    return true;
}

namespace {

using ComponentResult = std::variant<std::vector<Colour>, Uncolourable, PromiseViolation>;

void check_idempotent(ListState& state, const Graph& g) {
    if (!eliminate_safe(state, g).empty()) throw std::logic_error("safe elimination is not idempotent");
}

// Lists with 2-SAT leaves; branching on the smallest full-list vertex.
std::optional<std::vector<Colour>> branch_full_lists(const Graph& g, ListState state, SolveStats& stats,
                                                     bool debug) {
    (void)eliminate_safe(state, g);
    if (debug) check_idempotent(state, g);
    const auto full = full_list_vertices(state);
    if (full.empty()) {
        const auto residual = residual_to_2sat(state, g);
        ++stats.sat_instances;
        const auto assignment = solve_2sat(residual.instance);
        if (!assignment) return std::nullopt;
        return read_colouring(state, residual, *assignment);
    }
    for (Colour c = 1; c <= 3; ++c) {
        ListState next = state;
        const std::uint64_t before = next.propagation_steps();
        const bool ok = next.assign(full.front(), c) && propagate(next, g);
        stats.propagations += next.propagation_steps() - before;
        if (!ok) continue;
        if (auto found = branch_full_lists(g, std::move(next), stats, debug)) return found;
    }
    return std::nullopt;
}

ComponentResult solve_bipartite(const Graph& g, std::span<const ColourMask> lists, const Bipartition& sides,
                                SolveStats& stats, bool debug) {
    bool all_full = true;
    for (ColourMask m : lists) all_full = all_full && m == kAllColours;
    if (all_full) {
        std::vector<Colour> out(g.order());
        for (Vertex v = 0; v < g.order(); ++v) out[v] = sides.first.contains(v) ? 1 : 2;
        return out;
    }
    ListState state(std::vector<ColourMask>(lists.begin(), lists.end()));
    const bool ok = propagate(state, g);
    stats.propagations += state.propagation_steps();
    if (!ok) return Uncolourable{};
    (void)eliminate_safe(state, g);
    if (!full_list_vertices(state).empty()) ++stats.fallback_activations;
    if (auto found = branch_full_lists(g, std::move(state), stats, debug)) return *found;
    return Uncolourable{};
}

ComponentResult solve_c5(const Graph& g, std::span<const ColourMask> lists, std::span<const Vertex, 5> cycle,
                         const SolveOptions& options, SolveStats& stats) {
    auto analysed = analyse_skeleton(g, cycle);
    if (auto* violation = std::get_if<PromiseViolation>(&analysed)) return std::move(*violation);
    const auto& analysis = std::get<SkeletonAnalysis>(analysed);
    const Skeleton& sk = analysis.skeleton;

    std::array<ColourMask, 5> anchor_lists{};
    for (int i = 0; i < 5; ++i) anchor_lists[i] = lists[sk.c[i]];
    const ListState base(std::vector<ColourMask>(lists.begin(), lists.end()));
    for (const auto& c5 : enumerate_c5_colourings(anchor_lists)) {
        ++stats.anchor_colourings;
        const BranchPlan plan(analysis, palette_analysis(c5));
        const auto found = options.reference_kernel ? search_branches_reference(g, plan, sk, base)
                                                    : search_branches(g, plan, sk, base, options.threads);
        stats.branches += found.stats.enumerated;
        stats.survived += found.stats.survived;
        stats.propagations += found.stats.propagations;
        stats.sat_instances += found.stats.sat_instances;
        switch (found.kind) {
        case BranchSearchResult::Kind::Coloured:
            return found.colouring;
        case BranchSearchResult::Kind::ClaimBreach:
            ++stats.claim_breaches;
            return PromiseViolation::breach("full list left after safe elimination", found.residue);
        case BranchSearchResult::Kind::Exhausted:
            break;
        }
    }
    return Uncolourable{};
}

ComponentResult solve_component(const Graph& g, std::span<const ColourMask> lists, const SolveOptions& options,
                                SolveStats& stats) {
    if (options.mode == Mode::Verify)
        if (auto violation = check_promise(g, options.threads)) return std::move(*violation);

    auto split = bipartite_check(g);
    if (auto* sides = std::get_if<Bipartition>(&split))
        return solve_bipartite(g, lists, *sides, stats, options.debug_checks);

    const auto cycle = shortest_odd_cycle(g);
    if (!cycle) throw std::logic_error("non-bipartite component without an odd cycle");
    const auto& c = *cycle;
    if (c.size() == 3) return checked_witness(g, PromiseViolation::triangle(c[0], c[1], c[2]), "odd cycle");
    if (c.size() == 5) return solve_c5(g, lists, std::span<const Vertex, 5>(c.data(), 5), options, stats);
    if (c.size() == 7) {
        auto recognised = recognize_blownup_c7(g, std::span<const Vertex, 7>(c.data(), 7));
        if (auto* violation = std::get_if<PromiseViolation>(&recognised)) return std::move(*violation);
        if (auto found = colour_blownup_c7(std::get<TwinDecomposition>(recognised), lists)) return *found;
        return Uncolourable{};
    }
    // A chordless odd cycle of length 9 or more contains an induced P7.
    return checked_witness(g, PromiseViolation::induced_p7({c.begin(), c.begin() + 7}), "long odd cycle");
}

} // namespace

Outcome solve(const Graph& g, std::span<const ColourMask> lists, const SolveOptions& options) {
    if (lists.size() != static_cast<std::size_t>(g.order()))
        throw std::invalid_argument("solve: one list per vertex required");
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    std::vector<Colour> colouring(g.order(), 0);
    bool uncolourable = false;
    for (const auto& component : connected_components(g)) {
        const auto sub = induced_subgraph(g, component);
        std::vector<ColourMask> sub_lists;
        sub_lists.reserve(component.size());
        for (Vertex v : component) sub_lists.push_back(lists[v]);

        ComponentResult result;
        try {
            result = solve_component(sub.graph, sub_lists, options, outcome.stats);
        } catch (const PreconditionBreach& e) {
            if (options.mode == Mode::Verify) throw;
            result = PromiseViolation::breach(e.what());
        }

        if (auto* violation = std::get_if<PromiseViolation>(&result)) {
            for (Vertex& v : violation->vertices) v = sub.to_parent[v];
            outcome.result = std::move(*violation);
            outcome.stats.millis =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            return outcome;
        }
        if (std::holds_alternative<Uncolourable>(result)) {
            uncolourable = true;
            break;
        }
        const auto& local = std::get<std::vector<Colour>>(result);
        if (!verify_colouring(sub.graph, sub_lists, local))
            throw std::logic_error("component colouring failed verification");
        for (std::size_t i = 0; i < local.size(); ++i) colouring[sub.to_parent[i]] = local[i];
    }
    if (uncolourable) outcome.result = Uncolourable{};
    else {
        if (!verify_colouring(g, lists, colouring)) throw std::logic_error("colouring failed verification");
        outcome.result = std::move(colouring);
    }
    outcome.stats.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return outcome;
}

} // namespace p7col
