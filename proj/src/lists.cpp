#include "p7col/engine.hpp"

namespace p7col {

ListState::ListState(std::vector<ColourMask> masks, bool record_trail)
    : masks_(std::move(masks)), propagated_(masks_.size(), 0), record_(record_trail) {
    for (Vertex v = 0; v < order(); ++v) {
        if (mask_size(masks_[v]) == 1) pending_.push_back(v);
        if (masks_[v] == 0) empty_ = true;
    }
}

bool ListState::restrict(Vertex v, ColourMask keep, Cause cause, Vertex source) {
    const ColourMask old = masks_[v];
    const ColourMask now = old & keep;
    if (now == old) return now != 0;
    if (record_)
        for (Colour c = 1; c <= 3; ++c)
            if (mask_has(old, c) && !mask_has(now, c)) trail_.push_back({v, c, cause, source});
    masks_[v] = now;
    if (now == 0) {
        empty_ = true;
        return false;
    }
    if (mask_size(now) == 1 && !propagated_[v]) pending_.push_back(v);
    return true;
}

bool propagate(ListState& state, const Graph& g) {
    if (state.empty_) return false;
    while (!state.pending_.empty()) {
        const Vertex v = state.pending_.back();
        state.pending_.pop_back();
        if (state.propagated_[v]) continue;
        state.propagated_[v] = 1;
        ++state.steps_;
        const Colour c = state.colour(v);
        const ColourMask keep = kAllColours & ~mask_of(c);
        for (Vertex w : g.neighbours(v)) {
            if (!mask_has(state.masks_[w], c)) continue;
            if (!state.restrict(w, keep, Cause::Propagation, v)) {
                state.pending_.clear();
                return false;
            }
        }
    }
    return true;
}

std::vector<std::pair<Vertex, Colour>> eliminate_safe(ListState& state, const Graph& g) {
    std::vector<std::pair<Vertex, Colour>> out;
    for (Vertex v = 0; v < state.order(); ++v) {
        if (state.masks_[v] != kAllColours) continue;
        ColourMask missing = kAllColours;
        for (Vertex w : g.neighbours(v)) missing &= static_cast<ColourMask>(~state.masks_[w]);
        missing &= kAllColours;
        if (missing == 0) continue;
        const Colour j = smallest_colour(missing);
        (void)state.restrict(v, mask_of(j), Cause::Safe);
        // Every neighbour already misses j.
        state.propagated_[v] = 1;
        out.emplace_back(v, j);
    }
    return out;
}

std::vector<Vertex> full_list_vertices(const ListState& state) {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < state.order(); ++v)
        if (state.mask(v) == kAllColours) out.push_back(v);
    return out;
}

Residual2Sat residual_to_2sat(const ListState& state, const Graph& g) {
    Residual2Sat out;
    out.vertex_var.assign(state.order(), -1);
    for (Vertex v = 0; v < state.order(); ++v) {
        const int size = mask_size(state.mask(v));
        if (size == 3) throw PreconditionBreach("vertex " + std::to_string(v) + " still has three colours");
        if (size == 0) throw PreconditionBreach("vertex " + std::to_string(v) + " has an empty list");
        if (size == 2) {
            out.vertex_var[v] = static_cast<int>(out.var_vertex.size());
            out.var_vertex.push_back(v);
        }
    }
    out.instance = TwoSatInstance(static_cast<int>(out.var_vertex.size()));
    // "v takes colour c" as a literal of v's variable.
    auto takes = [&](Vertex v, Colour c) {
        return Literal::of(out.vertex_var[v], c == smallest_colour(state.mask(v)));
    };
    for (Vertex u = 0; u < state.order(); ++u)
        for (Vertex v : g.neighbours(u)) {
            if (v < u) continue;
            const ColourMask common = state.mask(u) & state.mask(v);
            if (common == 0) continue;
            if (state.assigned(u) || state.assigned(v))
                throw PreconditionBreach("edge " + std::to_string(u) + "-" + std::to_string(v) +
                                         " conflicts with an assigned colour");
            for (Colour c = 1; c <= 3; ++c)
                if (mask_has(common, c)) out.instance.add_clause(~takes(u, c), ~takes(v, c));
        }
    return out;
}

std::vector<Colour> read_colouring(const ListState& state, const Residual2Sat& residual,
                                   const std::vector<bool>& assignment) {
    std::vector<Colour> out(state.order());
    for (Vertex v = 0; v < state.order(); ++v) {
        const ColourMask m = state.mask(v);
        const int var = residual.vertex_var[v];
        if (var < 0) out[v] = smallest_colour(m);
        else out[v] = assignment[var] ? smallest_colour(m) : largest_colour(m);
    }
    return out;
}

} // namespace p7col
