#include "p7col/engine.hpp"

#include <atomic>
#include <exception>
#include <limits>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace p7col {

namespace {

using Result = BranchSearchResult;

// Safe elimination, residue check and 2-SAT on a propagated surviving branch.
// Returns true when the branch decides the search.
bool finish_branch(const Graph& g, ListState& state, const BranchDescriptor& branch, Result& out) {
    (void)eliminate_safe(state, g);
    auto residue = full_list_vertices(state);
    if (!residue.empty()) {
        out.kind = Result::Kind::ClaimBreach;
        out.branch = branch;
        out.residue = std::move(residue);
        return true;
    }
    const auto residual = residual_to_2sat(state, g);
    ++out.stats.sat_instances;
    const auto assignment = solve_2sat(residual.instance);
    if (!assignment) return false;
    out.kind = Result::Kind::Coloured;
    out.branch = branch;
    out.colouring = read_colouring(state, residual, *assignment);
    return true;
}

// Anchor colours and forced palettes, shared by every branch of a plan.
bool apply_palette(ListState& state, const BranchPlan& plan, const Skeleton& sk) {
    const Palette& p = plan.palette();
    for (int i = 0; i < 5; ++i)
        if (!state.assign(sk.c[i], p.c5[i])) return false;
    for (int i = 0; i < 5; ++i) {
        for (Vertex v : sk.t[i].members())
            if (!state.restrict(v, p.t_options[i], Cause::Seed)) return false;
        for (Vertex v : sk.d[i].members())
            if (!state.restrict(v, p.d_options[i], Cause::Seed)) return false;
    }
    return true;
}

bool apply_case(ListState& state, const BranchPlan& plan, const CaseChoice& choice) {
    for (auto [v, c] : plan.seeds(choice))
        if (!state.assign(v, c)) return false;
    return true;
}

struct ItemSearch {
    const Graph& g;
    const BranchPlan& plan;
    std::array<std::uint64_t, 6> suffix{}; // suffix[l]: branches below a prefix of length l
    std::array<std::size_t, 5> pick{};
    Result result;

    ItemSearch(const Graph& graph, const BranchPlan& p) : g(graph), plan(p) {
        suffix[5] = 1;
        for (int l = 4; l >= 0; --l) suffix[l] = suffix[l + 1] * plan.levels()[l].size();
    }

    // Depth-first over levels >= l from a propagated state. True once decided.
    bool descend(const ListState& state, int l) {
        if (l == 5) {
            ++result.stats.enumerated;
            ++result.stats.survived;
            ListState leaf = state;
            return finish_branch(g, leaf, plan.descriptor(pick), result);
        }
        const auto& level = plan.levels()[l];
        for (std::size_t j = 0; j < level.size(); ++j) {
            pick[l] = j;
            ListState next = state;
            const std::uint64_t before = next.propagation_steps();
            const bool ok = apply_case(next, plan, level[j]) && propagate(next, g);
            result.stats.propagations += next.propagation_steps() - before;
            if (!ok) {
                result.stats.enumerated += suffix[l + 1];
                continue;
            }
            if (descend(next, l + 1)) return true;
        }
        pick[l] = 0;
        return false;
    }
};

} // namespace

BranchSearchResult search_branches_reference(const Graph& g, const BranchPlan& plan, const Skeleton& sk,
                                             const ListState& base) {
    Result out;
    BranchEnumerator branches(plan);
    while (auto branch = branches.next()) {
        ++out.stats.enumerated;
        ListState state = base;
        const std::uint64_t before = state.propagation_steps();
        const bool ok = apply_branch(state, *branch, plan, sk) && propagate(state, g);
        out.stats.propagations += state.propagation_steps() - before;
        if (!ok) continue;
        ++out.stats.survived;
        if (finish_branch(g, state, *branch, out)) return out;
    }
    return out;
}

BranchSearchResult search_branches(const Graph& g, const BranchPlan& plan, const Skeleton& sk, const ListState& base,
                                   int threads) {
    Result out;
    ListState prepared = base;
    {
        const std::uint64_t before = prepared.propagation_steps();
        const bool ok = apply_palette(prepared, plan, sk) && propagate(prepared, g);
        out.stats.propagations += prepared.propagation_steps() - before;
        if (!ok) {
            out.stats.enumerated = plan.size();
            return out;
        }
    }

    const auto& levels = plan.levels();
    const std::int64_t width = static_cast<std::int64_t>(levels[1].size());
    const std::int64_t items = static_cast<std::int64_t>(levels[0].size()) * width;
    std::vector<Result> per_item(items);
    std::atomic<std::int64_t> best{std::numeric_limits<std::int64_t>::max()};
    std::exception_ptr failure;
    std::mutex failure_lock;

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads > 0 ? threads : 1)
    for (std::int64_t item = 0; item < items; ++item) {
        if (item > best.load(std::memory_order_relaxed)) continue;
        try {
            ItemSearch search(g, plan);
            search.pick[0] = static_cast<std::size_t>(item / width);
            search.pick[1] = static_cast<std::size_t>(item % width);
            ListState state = prepared;
            const std::uint64_t before = state.propagation_steps();
            const bool ok = apply_case(state, plan, levels[0][search.pick[0]]) &&
                            apply_case(state, plan, levels[1][search.pick[1]]) && propagate(state, g);
            search.result.stats.propagations += state.propagation_steps() - before;
            bool done = false;
            if (!ok) search.result.stats.enumerated += search.suffix[2];
            else done = search.descend(state, 2);
            per_item[item] = std::move(search.result);
            if (done) {
                std::int64_t current = best.load();
                while (item < current && !best.compare_exchange_weak(current, item)) {
                }
            }
        } catch (...) {
            std::lock_guard lock(failure_lock);
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    const std::int64_t last = std::min<std::int64_t>(best.load(), items - 1);
    BranchStats stats = out.stats;
    for (std::int64_t item = 0; item <= last; ++item) stats += per_item[item].stats;
    if (best.load() < items) out = std::move(per_item[best.load()]);
    out.stats = stats;
    return out;
}

} // namespace p7col
