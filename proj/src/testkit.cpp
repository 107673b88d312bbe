#include "p7col/testkit.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace p7col {

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below: empty range");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return x % bound;
}

namespace {

struct Backtracker {
    const Graph& g;
    std::vector<ColourMask> mask;
    std::vector<Colour> colour;
    std::vector<std::pair<Vertex, ColourMask>> undo;

    Vertex most_constrained() const {
        Vertex best = -1;
        for (Vertex v = 0; v < g.order(); ++v) {
            if (colour[v] != 0) continue;
            if (best < 0 || mask_size(mask[v]) < mask_size(mask[best]) ||
                (mask_size(mask[v]) == mask_size(mask[best]) && g.degree(v) > g.degree(best)))
                best = v;
        }
        return best;
    }

    bool run(int left) {
        if (left == 0) return true;
        const Vertex v = most_constrained();
        for (Colour c = 1; c <= 3; ++c) {
            if (!mask_has(mask[v], c)) continue;
            const std::size_t mark = undo.size();
            colour[v] = c;
            bool ok = true;
            for (Vertex w : g.neighbours(v)) {
                if (colour[w] != 0 || !mask_has(mask[w], c)) continue;
                undo.emplace_back(w, mask[w]);
                mask[w] &= static_cast<ColourMask>(~mask_of(c));
                if (mask[w] == 0) {
                    ok = false;
                    break;
                }
            }
            if (ok && run(left - 1)) return true;
            while (undo.size() > mark) {
                mask[undo.back().first] = undo.back().second;
                undo.pop_back();
            }
            colour[v] = 0;
        }
        return false;
    }
};

} // namespace

std::optional<std::vector<Colour>> oracle_solve(const Graph& g, std::span<const ColourMask> lists) {
    Backtracker bt{g, {lists.begin(), lists.end()}, std::vector<Colour>(g.order(), 0), {}};
    for (ColourMask m : bt.mask)
        if ((m & kAllColours) == 0) return std::nullopt;
    if (!bt.run(g.order())) return std::nullopt;
    return bt.colour;
}

std::vector<std::vector<Colour>> enumerate_colourings(const Graph& g, std::span<const ColourMask> lists) {
    if (g.order() > kEnumerationLimit)
        throw SizeGuard("enumerate_colourings: " + std::to_string(g.order()) + " vertices exceed the limit of " +
                        std::to_string(kEnumerationLimit));
    std::vector<std::vector<Colour>> out;
    std::vector<Colour> f(g.order(), 0);
    auto extend = [&](auto&& self, Vertex v) -> void {
        if (v == g.order()) {
            out.push_back(f);
            return;
        }
        for (Colour c = 1; c <= 3; ++c) {
            if (!mask_has(lists[v], c)) continue;
            bool ok = true;
            for (Vertex w : g.neighbours(v)) ok = ok && !(w < v && f[w] == c);
            if (!ok) continue;
            f[v] = c;
            self(self, v + 1);
        }
        f[v] = 0;
    };
    extend(extend, 0);
    return out;
}

const char* to_string(GenKind kind) {
    switch (kind) {
    case GenKind::BlownupC5: return "blownup_c5";
    case GenKind::BlownupC7: return "blownup_c7";
    case GenKind::SkeletonBuilt: return "skeleton_built";
    case GenKind::RandomRejection: return "random_rejection";
    }
    return "?";
}

std::optional<GenKind> gen_kind_from_string(const std::string& name) {
    for (GenKind k : {GenKind::BlownupC5, GenKind::BlownupC7, GenKind::SkeletonBuilt, GenKind::RandomRejection})
        if (name == to_string(k)) return k;
    return std::nullopt;
}

std::vector<ColourMask> random_lists(int n, Rng& rng, std::uint64_t full_num, std::uint64_t full_den) {
    std::vector<ColourMask> out(n);
    for (auto& m : out) m = rng.chance(full_num, full_den) ? kAllColours : static_cast<ColourMask>(rng.between(1, 7));
    return out;
}

Graph relabel(const Graph& g, std::span<const Vertex> perm) {
    auto edges = g.edges();
    for (auto& [u, v] : edges) {
        u = perm[u];
        v = perm[v];
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    return Graph::build(g.order(), edges);
}

namespace {

// Growing edge set with the promise checked incrementally.
class PromiseBuilder {
public:
    explicit PromiseBuilder(int n) : n_(n), adj_(static_cast<std::size_t>(n) * n, 0) {}

    bool adjacent(Vertex u, Vertex v) const { return adj_[index(u, v)] != 0; }
    const std::vector<Edge>& edges() const { return edges_; }
    Graph graph() const { return Graph::build(n_, edges_); }

    // Adds all edges from v to `targets` if the result has no triangle and no
    // induced P7 through v. Pre: v is isolated.
    bool attach(Vertex v, const std::vector<Vertex>& targets) {
        for (std::size_t i = 0; i < targets.size(); ++i)
            for (std::size_t j = i + 1; j < targets.size(); ++j)
                if (adjacent(targets[i], targets[j])) return false;
        const std::size_t mark = edges_.size();
        for (Vertex t : targets) edges_.emplace_back(v, t);
        const Graph g = graph();
        const Vertex seed[1] = {v};
        if (extend_induced_path(g, seed, 7)) {
            edges_.resize(mark);
            return false;
        }
        for (Vertex t : targets) mark_edge(v, t);
        return true;
    }

    bool try_edge(Vertex u, Vertex v) {
        if (u == v || adjacent(u, v)) return false;
        for (Vertex w = 0; w < n_; ++w)
            if (adjacent(u, w) && adjacent(v, w)) return false;
        edges_.emplace_back(u, v);
        const Graph g = graph();
        const Vertex seed[2] = {u, v};
        if (extend_induced_path(g, seed, 7)) {
            edges_.pop_back();
            return false;
        }
        mark_edge(u, v);
        return true;
    }

private:
    std::size_t index(Vertex u, Vertex v) const { return static_cast<std::size_t>(u) * n_ + v; }
    void mark_edge(Vertex u, Vertex v) { adj_[index(u, v)] = adj_[index(v, u)] = 1; }

    int n_;
    std::vector<char> adj_;
    std::vector<Edge> edges_;
};

std::vector<Vertex> random_permutation(int n, Rng& rng) {
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    return perm;
}

std::vector<int> random_composition(int n, int parts, Rng& rng) {
    if (n < parts)
        throw std::invalid_argument("blow-up of C" + std::to_string(parts) + " needs at least " +
                                    std::to_string(parts) + " vertices");
    std::vector<int> cuts(n - 1);
    std::iota(cuts.begin(), cuts.end(), 1);
    rng.shuffle(cuts);
    cuts.resize(parts - 1);
    std::sort(cuts.begin(), cuts.end());
    std::vector<int> sizes;
    int prev = 0;
    for (int c : cuts) {
        sizes.push_back(c - prev);
        prev = c;
    }
    sizes.push_back(n - prev);
    return sizes;
}

Generated blownup_cycle(int length, const GenSpec& spec, Rng& rng) {
    std::vector<int> sizes = spec.sizes.empty() ? random_composition(spec.n, length, rng) : spec.sizes;
    if (static_cast<int>(sizes.size()) != length)
        throw std::invalid_argument("expected " + std::to_string(length) + " class sizes");
    std::vector<std::vector<Vertex>> classes(length);
    int next = 0;
    for (int i = 0; i < length; ++i) {
        if (sizes[i] < 1) throw std::invalid_argument("class sizes must be positive");
        for (int k = 0; k < sizes[i]; ++k) classes[i].push_back(next++);
    }
    std::vector<Edge> edges;
    for (int i = 0; i < length; ++i)
        for (Vertex u : classes[i])
            for (Vertex v : classes[(i + 1) % length]) edges.emplace_back(std::min(u, v), std::max(u, v));
    const Graph base = Graph::build(next, edges);
    const auto perm = random_permutation(next, rng);
    Generated out{relabel(base, perm), {}};
    for (auto& cls : classes) {
        for (Vertex& v : cls) v = perm[v];
        std::sort(cls.begin(), cls.end());
    }
    out.classes = std::move(classes);
    return out;
}

Generated skeleton_built(const GenSpec& spec, Rng& rng) {
    const int n = spec.n;
    if (n < 5) throw std::invalid_argument("skeleton_built needs at least 5 vertices");
    PromiseBuilder b(n);
    for (Vertex i = 0; i < 5; ++i)
        if (!b.try_edge(i, (i + 1) % 5)) throw std::logic_error("anchor cycle rejected");
    for (Vertex v = 5; v < n; ++v) {
        for (int attempt = 0; attempt < 16; ++attempt) {
            std::vector<Vertex> targets;
            const int role = static_cast<int>(rng.below(8));
            const int i = static_cast<int>(rng.below(5));
            if (role < 3) {
                targets = {(i + 4) % 5, (i + 1) % 5};
            } else if (role < 6 || v == 5) {
                targets = {i};
            } else {
                targets = {static_cast<Vertex>(rng.between(5, v - 1))};
                if (rng.chance(1, 2)) {
                    const Vertex extra = static_cast<Vertex>(rng.between(5, v - 1));
                    if (extra != targets[0]) targets.push_back(extra);
                }
            }
            if (b.attach(v, targets)) break;
        }
    }
    const int tries = spec.edges >= 0 ? spec.edges : n;
    for (int t = 0; t < tries; ++t) {
        const Vertex u = static_cast<Vertex>(rng.below(n));
        const Vertex v = static_cast<Vertex>(rng.below(n));
        if (u < 5 && v < 5) continue;
        (void)b.try_edge(u, v);
    }
    const auto perm = random_permutation(n, rng);
    return {relabel(b.graph(), perm), {}};
}

Generated random_rejection(const GenSpec& spec, Rng& rng) {
    const int n = spec.n;
    if (n < 1) throw std::invalid_argument("random_rejection needs at least one vertex");
    const int target = spec.edges >= 0 ? spec.edges : std::min(n + n / 2, n * n / 5);
    if (target > n * n / 4)
        throw std::invalid_argument("random_rejection: no triangle-free graph on " + std::to_string(n) +
                                    " vertices has " + std::to_string(target) + " edges");
    // A maximal graph below the target restarts the growth; rejections
    // accumulate across restarts.
    const long long stale_limit = 4LL * n * n;
    PromiseBuilder b(n);
    int rejected = 0;
    long long stale = 0;
    while (static_cast<int>(b.edges().size()) < target) {
        const Vertex u = static_cast<Vertex>(rng.below(n));
        const Vertex v = static_cast<Vertex>(rng.below(n));
        if (u == v || b.adjacent(u, v)) continue;
        if (b.try_edge(u, v)) {
            stale = 0;
            continue;
        }
        if (++rejected > spec.budget)
            throw RejectionBudgetExceeded("random_rejection: " + std::to_string(spec.budget) +
                                          " candidate edges rejected before reaching " + std::to_string(target) +
                                          " edges");
        if (++stale > stale_limit) {
            b = PromiseBuilder(n);
            stale = 0;
        }
    }
    return {b.graph(), {}};
}

} // namespace

bool edge_keeps_promise(const Graph& g, Vertex u, Vertex v) {
    for (Vertex w : g.neighbours(u))
        if (g.adjacent(v, w)) return false;
    auto edges = g.edges();
    edges.emplace_back(std::min(u, v), std::max(u, v));
    const Graph h = Graph::build(g.order(), edges);
    const Vertex seed[2] = {u, v};
    return !extend_induced_path(h, seed, 7);
}

Graph inject_violation(const Graph& g, Injection kind, Rng& rng) {
    const int n = g.order();
    auto edges = g.edges();
    auto with = [&](int order, std::vector<Edge> extra) {
        auto all = edges;
        all.insert(all.end(), extra.begin(), extra.end());
        for (auto& [a, b] : all)
            if (a > b) std::swap(a, b);
        return Graph::build(order, all);
    };
    if (kind == Injection::Triangle) {
        std::vector<Vertex> hubs;
        for (Vertex v = 0; v < n; ++v)
            if (g.degree(v) >= 2) hubs.push_back(v);
        if (!hubs.empty() && rng.chance(2, 3)) {
            const Vertex x = hubs[rng.below(hubs.size())];
            const auto& nb = g.neighbours(x);
            const std::size_t i = rng.below(nb.size());
            std::size_t j = rng.below(nb.size() - 1);
            if (j >= i) ++j;
            return with(n, {{nb[i], nb[j]}});
        }
        if (!edges.empty()) {
            const auto [u, v] = edges[rng.below(edges.size())];
            return with(n + 1, {{u, n}, {v, n}});
        }
        return with(n + 3, {{n, n + 1}, {n + 1, n + 2}, {n, n + 2}});
    }
    for (int attempt = 0; attempt < 64 && n >= 2; ++attempt) {
        const Vertex u = static_cast<Vertex>(rng.below(n));
        const Vertex v = static_cast<Vertex>(rng.below(n));
        if (u == v || g.adjacent(u, v)) continue;
        const Graph h = with(n, {{u, v}});
        const Vertex seed[2] = {u, v};
        if (extend_induced_path(h, seed, 7)) return h;
    }
    const Vertex anchor = n > 0 ? static_cast<Vertex>(rng.below(n)) : 0;
    const int base = n > 0 ? n : 1;
    std::vector<Edge> tail{{anchor, base}};
    for (int k = 0; k < 5; ++k) tail.emplace_back(base + k, base + k + 1);
    return with(base + 6, tail);
}

Generated generate(const GenSpec& spec) {
    Rng rng(spec.seed);
    switch (spec.kind) {
    case GenKind::BlownupC5: return blownup_cycle(5, spec, rng);
    case GenKind::BlownupC7: return blownup_cycle(7, spec, rng);
    case GenKind::SkeletonBuilt: return skeleton_built(spec, rng);
    case GenKind::RandomRejection: return random_rejection(spec, rng);
    }
    throw std::invalid_argument("unknown generator kind");
}

} // namespace p7col
