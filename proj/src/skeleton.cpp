#include "p7col/skeleton.hpp"

#include <algorithm>
#include <queue>

namespace p7col {

namespace {

enum class Role : char { Outside, Cycle, T, D };

struct Roles {
    std::vector<Role> role;
    std::vector<int> index;
};

std::vector<Vertex> neighbours_in(const Graph& g, Vertex v, const VertexSet& set) {
    std::vector<Vertex> out;
    for (Vertex w : g.neighbours(v))
        if (set.contains(w)) out.push_back(w);
    return out;
}

// Three anchor vertices continuing an induced path that ends in s in S.
std::array<Vertex, 3> anchor_tail(const Skeleton& sk, const Roles& roles, Vertex s) {
    const int i = roles.index[s];
    if (roles.role[s] == Role::T) return {sk.c[cyc5(i + 1)], sk.c[cyc5(i + 2)], sk.c[cyc5(i + 3)]};
    return {sk.c[cyc5(i)], sk.c[cyc5(i + 1)], sk.c[cyc5(i + 2)]};
}

// x has u in T_i, z does not; y is their common neighbour.
PromiseViolation p3_witness(const Graph& g, const Skeleton& sk, Vertex x, Vertex y, Vertex z, Vertex u, int i,
                            const char* context) {
    if (g.adjacent(x, z)) return checked_witness(g, PromiseViolation::triangle(x, y, z), context);
    if (g.adjacent(u, y)) return checked_witness(g, PromiseViolation::triangle(x, y, u), context);
    return checked_witness(g,
                           PromiseViolation::induced_p7({z, y, x, u, sk.c[cyc5(i + 1)], sk.c[cyc5(i + 2)],
                                                         sk.c[cyc5(i + 3)]}),
                           context);
}

// Every two neighbours of a vertex inside `members` must see the same part
// of T_i, for each i in `indices`.
std::optional<PromiseViolation> check_uniform_t(const Graph& g, const Skeleton& sk, const std::vector<Vertex>& members,
                                                const VertexSet& inside, std::span<const int> indices,
                                                const char* context) {
    for (Vertex y : members) {
        auto nbrs = neighbours_in(g, y, inside);
        for (std::size_t k = 1; k < nbrs.size(); ++k) {
            Vertex x = nbrs[k - 1];
            Vertex z = nbrs[k];
            if (g.adjacent(x, z)) return checked_witness(g, PromiseViolation::triangle(x, y, z), context);
            for (int i : indices) {
                auto nx = neighbours_in(g, x, sk.t[i]);
                auto nz = neighbours_in(g, z, sk.t[i]);
                if (nx == nz) continue;
                std::vector<Vertex> only_x, only_z;
                std::set_difference(nx.begin(), nx.end(), nz.begin(), nz.end(), std::back_inserter(only_x));
                std::set_difference(nz.begin(), nz.end(), nx.begin(), nx.end(), std::back_inserter(only_z));
                if (!only_x.empty()) return p3_witness(g, sk, x, y, z, only_x.front(), i, context);
                return p3_witness(g, sk, z, y, x, only_z.front(), i, context);
            }
        }
    }
    return std::nullopt;
}

// Odd cycle inside a component of G - S: extend it along a shortest path to S
// and on into the anchor to obtain a long induced path.
PromiseViolation odd_component_witness(const Graph& g, const Skeleton& sk, const Roles& roles,
                                       const std::vector<Vertex>& comp) {
    const char* context = "odd cycle in G - S";
    auto sub = induced_subgraph(g, comp);
    auto local = shortest_odd_cycle(sub.graph);
    if (!local) return PromiseViolation::breach("component reported non-bipartite but has no odd cycle", comp);
    std::vector<Vertex> cycle;
    for (Vertex v : *local) cycle.push_back(sub.to_parent[v]);
    if (cycle.size() == 3) return checked_witness(g, PromiseViolation::triangle(cycle[0], cycle[1], cycle[2]), context);

    const int n = g.order();
    std::vector<Vertex> parent(n, -2);
    std::queue<Vertex> queue;
    for (Vertex v : cycle) {
        parent[v] = -1;
        queue.push(v);
    }
    Vertex last = -1, s = -1;
    while (!queue.empty() && s < 0) {
        Vertex v = queue.front();
        queue.pop();
        for (Vertex w : g.neighbours(v)) {
            if (sk.s.contains(w)) {
                last = v;
                s = w;
                break;
            }
            if (parent[w] == -2) {
                parent[w] = v;
                queue.push(w);
            }
        }
    }
    if (s < 0) return PromiseViolation::breach("component of G - S has no neighbour in S", comp);
    std::vector<Vertex> outer; // p_k, ..., p_1 (excluding the cycle vertex)
    for (Vertex x = last; parent[x] != -1; x = parent[x]) outer.push_back(x);
    std::reverse(outer.begin(), outer.end());
    const Vertex hook = outer.empty() ? s : outer.front();

    const int len = static_cast<int>(cycle.size());
    for (int j = 0; j < len; ++j) {
        if (!g.adjacent(cycle[j], hook)) continue;
        for (int dir : {1, -1}) {
            Vertex a = cycle[((j + dir) % len + len) % len];
            Vertex b = cycle[((j + 2 * dir) % len + len) % len];
            if (g.adjacent(a, hook) || g.adjacent(b, hook)) continue;
            std::vector<Vertex> path{b, a, cycle[j]};
            path.insert(path.end(), outer.begin(), outer.end());
            path.push_back(s);
            for (Vertex c : anchor_tail(sk, roles, s)) path.push_back(c);
            path.resize(7);
            return checked_witness(g, PromiseViolation::induced_p7(std::move(path)), context);
        }
    }
    return PromiseViolation::breach("no induced start on the odd cycle of G - S", cycle);
}

} // namespace

std::variant<Skeleton, PromiseViolation> build_skeleton(const Graph& g, std::span<const Vertex, 5> c5) {
    const int n = g.order();
    for (int i = 0; i < 5; ++i)
        if (!g.adjacent(c5[i], c5[cyc5(i + 1)]) || g.adjacent(c5[i], c5[cyc5(i + 2)]))
            throw std::invalid_argument("build_skeleton: anchor does not induce C5");

    Skeleton sk;
    std::copy(c5.begin(), c5.end(), sk.c.begin());
    for (int i = 0; i < 5; ++i) {
        sk.t[i] = VertexSet(n);
        sk.d[i] = VertexSet(n);
    }
    sk.s = VertexSet(n);
    sk.w = VertexSet(n);

    Roles roles{std::vector<Role>(n, Role::Outside), std::vector<int>(n, -1)};
    for (int i = 0; i < 5; ++i) {
        roles.role[sk.c[i]] = Role::Cycle;
        roles.index[sk.c[i]] = i;
        sk.s.insert(sk.c[i]);
    }
    for (Vertex v = 0; v < n; ++v) {
        if (roles.role[v] == Role::Cycle) continue;
        unsigned pattern = 0;
        for (Vertex w : g.neighbours(v))
            if (roles.role[w] == Role::Cycle) pattern |= 1u << roles.index[w];
        if (pattern == 0) continue;
        for (int i = 0; i < 5; ++i)
            if ((pattern >> i & 1u) && (pattern >> cyc5(i + 1) & 1u))
                return checked_witness(g, PromiseViolation::triangle(v, sk.c[i], sk.c[cyc5(i + 1)]),
                                       "anchor neighbourhood");
        // Without consecutive neighbours the pattern is a single vertex or a
        // pair at distance two.
        int idx = -1;
        Role role = Role::D;
        for (int i = 0; i < 5; ++i) {
            if (pattern == (1u << i)) idx = i;
            if (pattern == ((1u << cyc5(i - 1)) | (1u << cyc5(i + 1)))) {
                idx = i;
                role = Role::T;
            }
        }
        if (idx < 0) return PromiseViolation::breach("unclassifiable anchor neighbourhood", {v});
        roles.role[v] = role;
        roles.index[v] = idx;
        (role == Role::T ? sk.t[idx] : sk.d[idx]).insert(v);
        sk.s.insert(v);
    }

    for (Vertex a = 0; a < n; ++a)
        for (Vertex b : g.neighbours(a)) {
            if (b < a || roles.role[a] != roles.role[b] || roles.index[a] != roles.index[b]) continue;
            const int i = roles.index[a];
            if (roles.role[a] == Role::T)
                return checked_witness(g, PromiseViolation::triangle(a, b, sk.c[cyc5(i + 1)]), "T set not stable");
            if (roles.role[a] == Role::D)
                return checked_witness(g, PromiseViolation::triangle(a, b, sk.c[i]), "D set not stable");
        }

    // Edges of G - S never touch a D vertex.
    for (Vertex x = 0; x < n; ++x) {
        if (roles.role[x] != Role::Outside) continue;
        for (Vertex y : g.neighbours(x)) {
            if (roles.role[y] != Role::Outside) continue;
            for (Vertex u : g.neighbours(x)) {
                if (roles.role[u] != Role::D) continue;
                if (g.adjacent(y, u))
                    return checked_witness(g, PromiseViolation::triangle(x, y, u), "D neighbour of an edge in G - S");
                const int i = roles.index[u];
                return checked_witness(g,
                                       PromiseViolation::induced_p7({y, x, u, sk.c[i], sk.c[cyc5(i + 1)],
                                                                     sk.c[cyc5(i + 2)], sk.c[cyc5(i + 3)]}),
                                       "D neighbour of an edge in G - S");
            }
        }
    }

    std::vector<Vertex> outside;
    for (Vertex v = 0; v < n; ++v)
        if (roles.role[v] == Role::Outside) outside.push_back(v);
    auto rest = induced_subgraph(g, outside);
    const std::array<int, 5> all_indices{0, 1, 2, 3, 4};
    for (const auto& local_comp : connected_components(rest.graph)) {
        std::vector<Vertex> comp;
        for (Vertex v : local_comp) comp.push_back(rest.to_parent[v]);
        if (comp.size() == 1) {
            sk.w.insert(comp.front());
            continue;
        }
        auto sub = induced_subgraph(g, comp);
        auto parts = bipartite_check(sub.graph);
        if (std::holds_alternative<OddCycle>(parts)) return odd_component_witness(g, sk, roles, comp);

        VertexSet inside(n, comp);
        if (auto v = check_uniform_t(g, sk, comp, inside, all_indices, "T-neighbourhoods in a component of G - S"))
            return *v;

        ComponentInfo info;
        info.vertices = comp;
        const auto& bp = std::get<Bipartition>(parts);
        for (Vertex local : bp.first.members()) info.sides[0].push_back(sub.to_parent[local]);
        for (Vertex local : bp.second.members()) info.sides[1].push_back(sub.to_parent[local]);
        for (int k = 0; k < 2; ++k) {
            info.side_nbhd[k] = VertexSet(n, neighbours_in(g, info.sides[k].front(), sk.s));
            for (Vertex v : info.sides[k])
                if (VertexSet(n, neighbours_in(g, v, sk.s)) != info.side_nbhd[k])
                    return PromiseViolation::breach("side of a component of G - S without a common S-neighbourhood",
                                                    info.sides[k]);
        }
        if (info.side_nbhd[0].intersects(info.side_nbhd[1])) {
            Vertex s = (info.side_nbhd[0] & info.side_nbhd[1]).first();
            Vertex x = info.sides[0].front();
            Vertex y = neighbours_in(g, x, inside).front();
            return checked_witness(g, PromiseViolation::triangle(s, x, y), "sides of a component share a neighbour");
        }
        if (info.side_nbhd[0].empty() && info.side_nbhd[1].empty())
            return PromiseViolation::breach("component of G - S without neighbours in S", comp);
        for (int i = 0; i < 5; ++i) info.t_nbhd[i] = (info.side_nbhd[0] | info.side_nbhd[1]) & sk.t[i];
        sk.components.push_back(std::move(info));
    }
    return sk;
}

std::variant<std::vector<WdComponent>, PromiseViolation> wd_components(const Graph& g, const Skeleton& sk, int i) {
    const int n = g.order();
    for (int j : {cyc5(i - 1), i}) {
        const int k = cyc5(j + 1);
        for (Vertex w : sk.w.members()) {
            auto dj = neighbours_in(g, w, sk.d[j]);
            auto dk = neighbours_in(g, w, sk.d[k]);
            if (dj.empty() || dk.empty()) continue;
            if (g.adjacent(dj.front(), dk.front()))
                return checked_witness(g, PromiseViolation::triangle(dj.front(), w, dk.front()),
                                       "W vertex with neighbours in consecutive D sets");
            return checked_witness(g,
                                   PromiseViolation::induced_p7({dj.front(), w, dk.front(), sk.c[k], sk.c[cyc5(k + 1)],
                                                                 sk.c[cyc5(k + 2)], sk.c[cyc5(k + 3)]}),
                                   "W vertex with neighbours in consecutive D sets");
        }
    }

    VertexSet inside = sk.w | sk.d[i];
    std::vector<char> seen(n, 0);
    std::vector<WdComponent> out;
    const std::array<int, 1> only{i};
    for (Vertex start : inside.members()) {
        if (seen[start]) continue;
        std::vector<Vertex> comp;
        std::vector<Vertex> stack{start};
        seen[start] = 1;
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (Vertex w : g.neighbours(v))
                if (inside.contains(w) && !seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        if (comp.size() == 1) continue;
        std::sort(comp.begin(), comp.end());
        VertexSet members(n, comp);
        if (auto v = check_uniform_t(g, sk, comp, members, only, "T-neighbourhoods in a component of G[W + D]"))
            return *v;
        WdComponent info;
        info.index = i;
        info.vertices = comp;
        for (Vertex v : comp) (sk.w.contains(v) ? info.w_side : info.d_side).push_back(v);
        info.w_t_nbhd = VertexSet(n, neighbours_in(g, info.w_side.front(), sk.t[i]));
        info.d_t_nbhd = VertexSet(n, neighbours_in(g, info.d_side.front(), sk.t[i]));
        for (const auto& [side, nbhd] : {std::pair{&info.w_side, &info.w_t_nbhd}, std::pair{&info.d_side, &info.d_t_nbhd}})
            for (Vertex v : *side)
                if (VertexSet(n, neighbours_in(g, v, sk.t[i])) != *nbhd)
                    return PromiseViolation::breach("side of a component of G[W + D] without a common T-neighbourhood",
                                                    *side);
        info.t_nbhd = info.w_t_nbhd | info.d_t_nbhd;
        out.push_back(std::move(info));
    }
    return out;
}

std::variant<Chain, PromiseViolation> build_chain(const Graph& g, const Skeleton& sk, std::span<const WdComponent> wd,
                                                  int i) {
    if (sk.t[i].empty()) throw std::invalid_argument("build_chain: T_i is empty");
    struct Level {
        VertexSet set;
        const std::vector<Vertex>* owner;
    };
    std::vector<Level> found;
    for (const auto& comp : sk.components)
        if (!comp.t_nbhd[i].empty()) found.push_back({comp.t_nbhd[i], &comp.vertices});
    for (const auto& comp : wd)
        if (!comp.t_nbhd.empty()) found.push_back({comp.t_nbhd, &comp.vertices});
    std::stable_sort(found.begin(), found.end(), [](const Level& a, const Level& b) { return a.set.size() < b.set.size(); });
    std::vector<Level> distinct;
    for (auto& level : found)
        if (distinct.empty() || level.set != distinct.back().set) distinct.push_back(std::move(level));

    for (std::size_t k = 1; k < distinct.size(); ++k) {
        const auto& a = distinct[k - 1];
        const auto& b = distinct[k];
        if (a.set.is_subset_of(b.set)) continue;
        const char* context = "T-neighbourhoods of components are not nested";
        const Vertex u = (a.set - b.set).first();
        const Vertex z = (b.set - a.set).first();
        VertexSet in_a(g.order(), *a.owner);
        VertexSet in_b(g.order(), *b.owner);
        Vertex v = neighbours_in(g, u, in_a).front();
        Vertex w = neighbours_in(g, v, in_a).front();
        Vertex y = neighbours_in(g, z, in_b).front();
        Vertex x = neighbours_in(g, y, in_b).front();
        if (g.adjacent(u, w)) return checked_witness(g, PromiseViolation::triangle(u, v, w), context);
        if (g.adjacent(z, x)) return checked_witness(g, PromiseViolation::triangle(z, y, x), context);
        return checked_witness(g, PromiseViolation::induced_p7({x, y, z, sk.c[cyc5(i + 1)], u, v, w}), context);
    }

    Chain chain;
    chain.index = i;
    chain.r = static_cast<int>(distinct.size());
    chain.v0 = distinct.empty() ? sk.t[i].first() : distinct.front().set.first();
    VertexSet base(g.order());
    base.insert(chain.v0);
    chain.levels.push_back(std::move(base));
    for (auto& level : distinct) chain.levels.push_back(std::move(level.set));
    chain.levels.push_back(sk.t[i]);
    return chain;
}

std::variant<SkeletonAnalysis, PromiseViolation> analyse_skeleton(const Graph& g, std::span<const Vertex, 5> c5) {
    auto built = build_skeleton(g, c5);
    if (auto* v = std::get_if<PromiseViolation>(&built)) return *v;
    SkeletonAnalysis out;
    out.skeleton = std::move(std::get<Skeleton>(built));
    for (int i = 0; i < 5; ++i) {
        auto comps = wd_components(g, out.skeleton, i);
        if (auto* v = std::get_if<PromiseViolation>(&comps)) return *v;
        out.wd[i] = std::move(std::get<std::vector<WdComponent>>(comps));
    }
    for (int i = 0; i < 5; ++i) {
        if (out.skeleton.t[i].empty()) continue;
        auto chain = build_chain(g, out.skeleton, out.wd[i], i);
        if (auto* v = std::get_if<PromiseViolation>(&chain)) return *v;
        out.chains[i] = std::move(std::get<Chain>(chain));
    }
    return out;
}

} // namespace p7col
