#include "p7col/engine.hpp"

#include <algorithm>

namespace p7col {

std::vector<C5Colouring> enumerate_c5_colourings(const std::array<ColourMask, 5>& lists) {
    std::vector<C5Colouring> out;
    C5Colouring col{};
    auto extend = [&](auto&& self, int i) -> void {
        if (i == 5) {
            if (col[4] != col[0]) out.push_back(col);
            return;
        }
        for (Colour c = 1; c <= 3; ++c) {
            if (!mask_has(lists[i], c) || (i > 0 && col[i - 1] == c)) continue;
            col[i] = c;
            self(self, i + 1);
        }
    };
    extend(extend, 0);
    return out;
}

Palette palette_analysis(const C5Colouring& c5) {
    Palette p;
    p.c5 = c5;
    std::array<int, 4> count{};
    for (Colour c : c5) ++count[c];
    int single = -1;
    for (int i = 0; i < 5; ++i)
        if (count[c5[i]] == 1) single = i;
    if (single < 0) throw std::invalid_argument("palette_analysis: not a proper 3-colouring of C5");
    for (int i = 0; i < 5; ++i) {
        p.t_options[i] = kAllColours & ~mask_of(c5[cyc5(i - 1)]) & ~mask_of(c5[cyc5(i + 1)]);
        p.d_options[i] = kAllColours & ~mask_of(c5[i]);
    }
    p.shared = c5[single];
    p.open_t = {cyc5(single + 2), cyc5(single + 3)};
    std::sort(p.open_t.begin(), p.open_t.end());
    for (int k = 0; k < 2; ++k) p.own[k] = smallest_colour(p.t_options[p.open_t[k]] & ~mask_of(p.shared));
    p.free_d = {cyc5(single), cyc5(single + 1), cyc5(single + 4)};
    std::sort(p.free_d.begin(), p.free_d.end());
    return p;
}

BranchPlan::BranchPlan(const SkeletonAnalysis& analysis, const Palette& palette)
    : analysis_(&analysis), palette_(palette) {
    const Skeleton& sk = analysis.skeleton;
    for (int k = 0; k < 2; ++k) {
        const int i = palette.open_t[k];
        auto& level = levels_[k];
        if (!analysis.chains[i]) {
            level.push_back({i, CaseTag::None});
            continue;
        }
        const Chain& chain = *analysis.chains[i];
        level.push_back({i, CaseTag::C});
        level.push_back({i, CaseTag::D});
        for (CaseTag tag : {CaseTag::A, CaseTag::B})
            for (int lk = 0; lk <= chain.r; ++lk)
                for (Vertex w : (chain.levels[lk + 1] - chain.levels[lk]).members()) level.push_back({i, tag, lk, w});
    }
    for (int k = 0; k < 3; ++k) {
        const int i = palette.free_d[k];
        auto& level = levels_[2 + k];
        if (sk.d[i].empty()) {
            level.push_back({i, CaseTag::None});
            continue;
        }
        level.push_back({i, CaseTag::G});
        level.push_back({i, CaseTag::H});
        const Vertex vi = sk.d[i].first();
        for (CaseTag tag : {CaseTag::E, CaseTag::F})
            for (Vertex v : sk.d[i].members())
                if (v != vi) level.push_back({i, tag, -1, v});
    }
}

std::uint64_t BranchPlan::size() const {
    std::uint64_t total = 1;
    for (const auto& level : levels_) total *= level.size();
    return total;
}

BranchDescriptor BranchPlan::descriptor(const std::array<std::size_t, 5>& pick) const {
    BranchDescriptor b;
    b.c5 = palette_.c5;
    for (int l = 0; l < 5; ++l) b.cases[l] = levels_[l][pick[l]];
    return b;
}

std::vector<std::pair<Vertex, Colour>> BranchPlan::seeds(const CaseChoice& choice) const {
    std::vector<std::pair<Vertex, Colour>> out;
    if (choice.tag == CaseTag::None) return out;
    const Skeleton& sk = analysis_->skeleton;
    const int i = choice.index;
    auto all = [&](const VertexSet& set, Colour c) {
        for (Vertex v : set.members()) out.emplace_back(v, c);
    };
    switch (choice.tag) {
    case CaseTag::A:
    case CaseTag::B:
    case CaseTag::C:
    case CaseTag::D: {
        const Colour own = palette_.own[palette_.open_t[0] == i ? 0 : 1];
        const Colour shared = palette_.shared;
        const Chain& chain = *analysis_->chains[i];
        if (choice.tag == CaseTag::C) all(sk.t[i], own);
        else if (choice.tag == CaseTag::D) all(sk.t[i], shared);
        else {
            const bool a = choice.tag == CaseTag::A;
            all(chain.levels[choice.level], a ? own : shared);
            out.emplace_back(choice.witness, a ? shared : own);
        }
        break;
    }
    default: {
        const Colour first = smallest_colour(palette_.d_options[i]);
        const Colour second = largest_colour(palette_.d_options[i]);
        const Vertex vi = sk.d[i].first();
        if (choice.tag == CaseTag::G) all(sk.d[i], first);
        else if (choice.tag == CaseTag::H) all(sk.d[i], second);
        else {
            const bool e = choice.tag == CaseTag::E;
            out.emplace_back(vi, e ? first : second);
            out.emplace_back(choice.witness, e ? second : first);
        }
        break;
    }
    }
    return out;
}

std::optional<BranchDescriptor> BranchEnumerator::next() {
    if (done_) return std::nullopt;
    const auto& levels = plan_->levels();
    if (!started_) {
        started_ = true;
        return plan_->descriptor(pick_);
    }
    for (int l = 4; l >= 0; --l) {
        if (++pick_[l] < levels[l].size()) return plan_->descriptor(pick_);
        pick_[l] = 0;
    }
    done_ = true;
    return std::nullopt;
}

std::uint64_t branch_count_formula(const SkeletonAnalysis& analysis, const Palette& palette) {
    std::uint64_t total = 1;
    for (int i : palette.open_t) {
        if (!analysis.chains[i]) continue;
        const Chain& chain = *analysis.chains[i];
        std::uint64_t steps = 0;
        for (int k = 0; k <= chain.r; ++k) steps += (chain.levels[k + 1] - chain.levels[k]).size();
        total *= 2 + 2 * steps;
    }
    for (int i : palette.free_d) {
        const int size = analysis.skeleton.d[i].size();
        if (size > 0) total *= 2 + 2 * static_cast<std::uint64_t>(size - 1);
    }
    return total;
}

std::vector<std::pair<Vertex, Colour>> branch_seeds(const BranchDescriptor& branch, const BranchPlan& plan) {
    std::vector<std::pair<Vertex, Colour>> out;
    const auto& anchor = plan.analysis().skeleton.c;
    for (int i = 0; i < 5; ++i) out.emplace_back(anchor[i], branch.c5[i]);
    for (const auto& choice : branch.cases) {
        auto part = plan.seeds(choice);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

bool apply_branch(ListState& state, const BranchDescriptor& branch, const BranchPlan& plan, const Skeleton& sk) {
    const Palette& p = plan.palette();
    for (int i = 0; i < 5; ++i)
        if (!state.assign(sk.c[i], branch.c5[i])) return false;
    for (int i = 0; i < 5; ++i) {
        for (Vertex v : sk.t[i].members())
            if (!state.restrict(v, p.t_options[i], Cause::Seed)) return false;
        for (Vertex v : sk.d[i].members())
            if (!state.restrict(v, p.d_options[i], Cause::Seed)) return false;
    }
    for (const auto& choice : branch.cases)
        for (auto [v, c] : plan.seeds(choice))
            if (!state.assign(v, c)) return false;
    return true;
}

} // namespace p7col
