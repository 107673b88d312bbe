#include "p7col/recognition.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <deque>
#include <limits>
#include <numeric>
#include <queue>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace p7col {

const char* to_string(ViolationKind kind) {
    switch (kind) {
    case ViolationKind::Triangle: return "triangle";
    case ViolationKind::InducedP7: return "induced_p7";
    case ViolationKind::StructureBreach: return "structure_breach";
    }
    return "unknown";
}

PromiseViolation PromiseViolation::triangle(Vertex a, Vertex b, Vertex c) {
    return {ViolationKind::Triangle, {a, b, c}, {}};
}

PromiseViolation PromiseViolation::induced_p7(std::vector<Vertex> path) {
    return {ViolationKind::InducedP7, std::move(path), {}};
}

PromiseViolation PromiseViolation::breach(std::string note, std::vector<Vertex> vertices) {
    return {ViolationKind::StructureBreach, std::move(vertices), std::move(note)};
}

bool is_triangle(const Graph& g, std::span<const Vertex> v) {
    if (v.size() != 3) return false;
    for (Vertex x : v)
        if (x < 0 || x >= g.order()) return false;
    return g.adjacent(v[0], v[1]) && g.adjacent(v[1], v[2]) && g.adjacent(v[0], v[2]);
}

bool is_induced_path(const Graph& g, std::span<const Vertex> path) {
    const auto k = path.size();
    for (Vertex x : path)
        if (x < 0 || x >= g.order()) return false;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            if (path[i] == path[j]) return false;
            if (g.adjacent(path[i], path[j]) != (j == i + 1)) return false;
        }
    return true;
}

bool witness_is_valid(const Graph& g, const PromiseViolation& violation) {
    switch (violation.kind) {
    case ViolationKind::Triangle: return is_triangle(g, violation.vertices);
    case ViolationKind::InducedP7: return violation.vertices.size() == 7 && is_induced_path(g, violation.vertices);
    case ViolationKind::StructureBreach: return !violation.note.empty();
    }
    return false;
}

PromiseViolation checked_witness(const Graph& g, PromiseViolation candidate, const std::string& context) {
    if (witness_is_valid(g, candidate)) return candidate;
    return PromiseViolation::breach(context + ": constructed witness did not verify", std::move(candidate.vertices));
}

namespace {

// Smallest w > v adjacent to both u and v, or -1.
Vertex common_neighbour_above(const Graph& g, Vertex u, Vertex v) {
    if (g.has_matrix()) {
        auto ru = g.row(u);
        auto rv = g.row(v);
        const Vertex start = v + 1;
        for (std::size_t i = static_cast<std::size_t>(start) >> 6; i < ru.size(); ++i) {
            std::uint64_t word = ru[i] & rv[i];
            if (i == static_cast<std::size_t>(start) >> 6) word &= ~std::uint64_t{0} << (start & 63);
            if (word) return static_cast<Vertex>(i * 64 + std::countr_zero(word));
        }
        return -1;
    }
    const auto& a = g.neighbours(u);
    const auto& b = g.neighbours(v);
    auto ia = std::upper_bound(a.begin(), a.end(), v);
    auto ib = std::upper_bound(b.begin(), b.end(), v);
    while (ia != a.end() && ib != b.end()) {
        if (*ia == *ib) return *ia;
        if (*ia < *ib) ++ia;
        else ++ib;
    }
    return -1;
}

std::optional<std::array<Vertex, 3>> triangle_at(const Graph& g, Vertex u) {
    for (Vertex v : g.neighbours(u)) {
        if (v <= u) continue;
        Vertex w = common_neighbour_above(g, u, v);
        if (w >= 0) return std::array<Vertex, 3>{u, v, w};
    }
    return std::nullopt;
}

// Depth-first growth of an induced path. `left_open` allows further
// additions at the front; once closed, only the back end grows.
class PathGrower {
public:
    PathGrower(const Graph& g, std::deque<Vertex> path) : g_(g), path_(std::move(path)) {}

    bool grow(int need, bool left_open) {
        if (need == 0) return true;
        if (left_open) {
            if (grow(need, false)) return true;
            const Vertex end = path_.front();
            for (Vertex x : g_.neighbours(end)) {
                if (!attachable(x, end)) continue;
                path_.push_front(x);
                if (grow(need - 1, true)) return true;
                path_.pop_front();
            }
            return false;
        }
        const Vertex end = path_.back();
        for (Vertex x : g_.neighbours(end)) {
            if (!attachable(x, end)) continue;
            path_.push_back(x);
            if (grow(need - 1, false)) return true;
            path_.pop_back();
        }
        return false;
    }

    std::vector<Vertex> path() const { return {path_.begin(), path_.end()}; }

private:
    bool attachable(Vertex x, Vertex end) const {
        for (Vertex p : path_) {
            if (p == x) return false;
            if (p != end && g_.adjacent(x, p)) return false;
        }
        return true;
    }

    const Graph& g_;
    std::deque<Vertex> path_;
};

std::optional<std::vector<Vertex>> p7_from(const Graph& g, Vertex start) {
    PathGrower grower(g, std::deque<Vertex>{start});
    if (grower.grow(6, false)) return grower.path();
    return std::nullopt;
}

std::optional<std::vector<Vertex>> first_p7(const Graph& g, int threads) {
    const int n = g.order();
    std::vector<std::optional<std::vector<Vertex>>> found(n);
    std::atomic<int> best{n};
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads) if (threads > 1)
    for (int s = 0; s < n; ++s) {
        if (s > best.load(std::memory_order_relaxed)) continue;
        found[s] = p7_from(g, s);
        if (found[s]) {
            int current = best.load();
            while (s < current && !best.compare_exchange_weak(current, s)) {}
        }
    }
    if (best.load() < n) return found[best.load()];
    return std::nullopt;
}

} // namespace

std::optional<std::array<Vertex, 3>> find_triangle(const Graph& g, int threads) {
    const int n = g.order();
    std::vector<std::optional<std::array<Vertex, 3>>> found(n);
    std::atomic<int> best{n};
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads) if (threads > 1)
    for (int u = 0; u < n; ++u) {
        if (u > best.load(std::memory_order_relaxed)) continue;
        found[u] = triangle_at(g, u);
        if (found[u]) {
            int current = best.load();
            while (u < current && !best.compare_exchange_weak(current, u)) {}
        }
    }
    if (best.load() < n) return found[best.load()];
    return std::nullopt;
}

std::optional<std::vector<Vertex>> extend_induced_path(const Graph& g, std::span<const Vertex> seed, int length) {
    if (seed.empty() || !is_induced_path(g, seed)) return std::nullopt;
    const int need = length - static_cast<int>(seed.size());
    if (need < 0) return std::nullopt;
    PathGrower grower(g, std::deque<Vertex>(seed.begin(), seed.end()));
    if (grower.grow(need, true)) return grower.path();
    return std::nullopt;
}

std::optional<std::vector<Vertex>> find_induced_p7_reference(const Graph& g) {
    for (Vertex s = 0; s < g.order(); ++s)
        if (auto p = p7_from(g, s)) return p;
    return std::nullopt;
}

std::optional<std::vector<Vertex>> find_induced_p7(const Graph& g, int threads) {
    auto classes = false_twin_classes(g);
    if (classes.size() == static_cast<std::size_t>(g.order())) return first_p7(g, threads);
    std::vector<Vertex> reps;
    reps.reserve(classes.size());
    for (const auto& c : classes) reps.push_back(c.front());
    std::sort(reps.begin(), reps.end());
    auto quotient = induced_subgraph(g, reps);
    auto path = first_p7(quotient.graph, threads);
    if (!path) return std::nullopt;
    for (auto& v : *path) v = quotient.to_parent[v];
    return path;
}

std::vector<std::vector<Vertex>> false_twin_classes(const Graph& g) {
    std::vector<Vertex> order(g.order());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
        const auto& na = g.neighbours(a);
        const auto& nb = g.neighbours(b);
        if (na.size() != nb.size()) return na.size() < nb.size();
        return na < nb;
    });
    std::vector<std::vector<Vertex>> classes;
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (i == 0 || g.neighbours(order[i]) != g.neighbours(order[i - 1])) classes.emplace_back();
        classes.back().push_back(order[i]);
    }
    for (auto& c : classes) std::sort(c.begin(), c.end());
    std::sort(classes.begin(), classes.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return classes;
}

namespace {

// Shortest odd cycle through `root` using only vertices >= root, if it is
// shorter than `bound`. Among candidates of equal length the
// lexicographically smallest (rotated to start at root) is returned.
std::optional<std::vector<Vertex>> odd_cycle_at(const Graph& g, Vertex root, int bound,
                                                std::vector<int>& dist, std::vector<Vertex>& parent) {
    std::vector<Vertex> touched{root};
    dist[root] = 0;
    parent[root] = -1;
    std::queue<Vertex> queue;
    queue.push(root);
    int found_depth = std::numeric_limits<int>::max();
    std::vector<Edge> candidates;
    while (!queue.empty()) {
        Vertex v = queue.front();
        queue.pop();
        const int d = dist[v];
        if (d > found_depth || 2 * d + 1 >= bound) break;
        for (Vertex w : g.neighbours(v)) {
            if (w < root) continue;
            if (dist[w] < 0) {
                dist[w] = d + 1;
                parent[w] = v;
                touched.push_back(w);
                queue.push(w);
            } else if (dist[w] == d && v < w) {
                found_depth = d;
                candidates.emplace_back(v, w);
            }
        }
    }
    std::optional<std::vector<Vertex>> best;
    for (auto [a, b] : candidates) {
        std::vector<Vertex> left, right;
        for (Vertex x = a; x != root; x = parent[x]) left.push_back(x);
        for (Vertex x = b; x != root; x = parent[x]) right.push_back(x);
        std::vector<Vertex> cycle{root};
        // Orientation with the smaller second vertex.
        if (left.back() > right.back()) std::swap(left, right);
        cycle.insert(cycle.end(), left.rbegin(), left.rend());
        cycle.insert(cycle.end(), right.begin(), right.end());
        if (!best || cycle < *best) best = std::move(cycle);
    }
    for (Vertex v : touched) dist[v] = -1;
    return best;
}

} // namespace

std::optional<std::vector<Vertex>> shortest_odd_cycle(const Graph& g) {
    if (std::holds_alternative<Bipartition>(bipartite_check(g))) return std::nullopt;
    // Shortest odd cycles are induced, so they never contain two false
    // twins; the canonical one lies on class representatives.
    auto classes = false_twin_classes(g);
    std::vector<Vertex> reps;
    for (const auto& c : classes) reps.push_back(c.front());
    std::sort(reps.begin(), reps.end());
    auto quotient = induced_subgraph(g, reps);
    const Graph& q = quotient.graph;
    std::vector<int> dist(q.order(), -1);
    std::vector<Vertex> parent(q.order(), -1);
    std::optional<std::vector<Vertex>> best;
    int bound = std::numeric_limits<int>::max();
    for (Vertex r = 0; r < q.order(); ++r) {
        auto cycle = odd_cycle_at(q, r, bound, dist, parent);
        if (cycle && static_cast<int>(cycle->size()) < bound) {
            bound = static_cast<int>(cycle->size());
            best = std::move(cycle);
            if (bound == 3) break;
        }
    }
    if (!best) return std::nullopt;
    for (auto& v : *best) v = quotient.to_parent[v];
    return best;
}

std::variant<TwinDecomposition, PromiseViolation> recognize_blownup_c7(const Graph& g,
                                                                      std::span<const Vertex, 7> c7) {
    const int n = g.order();
    auto at = [&](int i) { return c7[((i % 7) + 7) % 7]; };
    TwinDecomposition dec;
    dec.class_of.assign(n, -1);
    std::vector<int> position(n, -1);
    for (int i = 0; i < 7; ++i) {
        position[c7[i]] = i;
        dec.class_of[c7[i]] = i;
        dec.representative[i] = c7[i];
    }
    auto fail = [&](PromiseViolation candidate, const char* context) {
        return checked_witness(g, std::move(candidate), context);
    };

    std::vector<Vertex> uncovered;
    for (Vertex v = 0; v < n; ++v) {
        if (position[v] >= 0) continue;
        unsigned pattern = 0;
        for (Vertex w : g.neighbours(v))
            if (position[w] >= 0) pattern |= 1u << position[w];
        const int count = std::popcount(pattern);
        if (count == 0) {
            uncovered.push_back(v);
            continue;
        }
        for (int i = 0; i < 7; ++i)
            if ((pattern >> i & 1u) && (pattern >> ((i + 1) % 7) & 1u))
                return fail(PromiseViolation::triangle(v, at(i), at(i + 1)), "consecutive cycle neighbours");
        if (count == 1) {
            const int i = std::countr_zero(pattern);
            return fail(PromiseViolation::induced_p7({v, at(i), at(i + 1), at(i + 2), at(i + 3), at(i + 4), at(i + 5)}),
                        "single cycle neighbour");
        }
        int cls = -1;
        if (count == 2)
            for (int i = 0; i < 7; ++i)
                if (pattern == ((1u << ((i + 6) % 7)) | (1u << ((i + 1) % 7)))) cls = i;
        if (cls < 0)
            return PromiseViolation::breach("vertex with cycle neighbours at distance three closes a C5; "
                                            "the anchor is not a shortest odd cycle",
                                            {v});
        dec.class_of[v] = cls;
    }

    if (!uncovered.empty()) {
        for (Vertex u : uncovered)
            for (Vertex x : g.neighbours(u)) {
                const int i = dec.class_of[x];
                if (i < 0 || position[x] >= 0) continue;
                return fail(PromiseViolation::induced_p7({u, x, at(i + 1), at(i + 2), at(i + 3), at(i + 4), at(i + 5)}),
                            "vertex at distance two from the cycle");
            }
        return PromiseViolation::breach("vertices without a path to the cycle; graph is not connected", uncovered);
    }

    for (Vertex a = 0; a < n; ++a)
        for (Vertex b : g.neighbours(a)) {
            if (b < a) continue;
            const int i = dec.class_of[a];
            const int j = dec.class_of[b];
            const int gap = ((j - i) % 7 + 7) % 7;
            if (gap == 0)
                return fail(PromiseViolation::triangle(a, b, at(i + 1)), "edge inside a class");
            if (gap == 2 || gap == 5) {
                const int mid = gap == 2 ? i + 1 : j + 1;
                return fail(PromiseViolation::triangle(a, b, at(mid)), "edge between classes at distance two");
            }
            if (gap == 3 || gap == 4)
                return PromiseViolation::breach("edge between classes at distance three closes a C5", {a, b});
        }

    for (Vertex v = 0; v < n; ++v) dec.classes[dec.class_of[v]].push_back(v);

    for (int i = 0; i < 7; ++i) {
        const int j = (i + 1) % 7;
        for (Vertex x : dec.classes[i])
            for (Vertex y : dec.classes[j])
                if (!g.adjacent(x, y))
                    return fail(PromiseViolation::induced_p7({y, at(i + 2), at(i + 3), at(i + 4), at(i + 5), at(i + 6), x}),
                                "missing edge between consecutive classes");
    }
    return dec;
}

std::optional<PromiseViolation> check_promise(const Graph& g, int threads) {
    if (auto t = find_triangle(g, threads)) return PromiseViolation::triangle((*t)[0], (*t)[1], (*t)[2]);
    if (auto p = find_induced_p7(g, threads)) return PromiseViolation::induced_p7(std::move(*p));
    return std::nullopt;
}

} // namespace p7col
