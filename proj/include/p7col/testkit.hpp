#pragma once

#include "p7col/engine.hpp"
#include "p7col/graph.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace p7col {

/// Seeded generator with draws that do not depend on the standard library's
/// distribution implementations, so outputs are reproducible bit for bit.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, bound). Pre: bound > 0.
    std::uint64_t below(std::uint64_t bound);
    /// Uniform in [lo, hi].
    int between(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1)); }
    /// True with probability num / den.
    bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

    template <class T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[below(i)]);
    }

private:
    std::mt19937_64 engine_;
};

/// Backtracking list colouring: most constrained vertex first, forward
/// checking on neighbours. Independent of the solver.
std::optional<std::vector<Colour>> oracle_solve(const Graph& g, std::span<const ColourMask> lists);

class SizeGuard : public std::length_error {
public:
    using std::length_error::length_error;
};

inline constexpr int kEnumerationLimit = 16;

/// Every proper list colouring, lexicographic in (f(0), f(1), ...).
/// Throws SizeGuard above kEnumerationLimit vertices.
std::vector<std::vector<Colour>> enumerate_colourings(const Graph& g, std::span<const ColourMask> lists);

enum class GenKind { BlownupC5, BlownupC7, SkeletonBuilt, RandomRejection };

const char* to_string(GenKind kind);
std::optional<GenKind> gen_kind_from_string(const std::string& name);

struct GenSpec {
    GenKind kind = GenKind::SkeletonBuilt;
    std::uint64_t seed = 0;
    /// Vertex count; for blow-ups, split into random non-empty class sizes
    /// unless `sizes` is given.
    int n = 20;
    std::vector<int> sizes;
    /// Random edges tried after the vertex roles are placed (skeleton_built)
    /// or target edge count (random_rejection); -1 picks a default from n.
    int edges = -1;
    /// Rejected candidate edges tolerated by random_rejection.
    int budget = 10000;
};

class RejectionBudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Generated {
    Graph graph;
    /// Blow-up classes in cycle order; empty for the other kinds.
    std::vector<std::vector<Vertex>> classes;
};

/// Every output is triangle-free and P7-free.
Generated generate(const GenSpec& spec);

/// Each list is full with probability full_num / full_den, otherwise a
/// uniformly random non-empty subset of {1, 2, 3}.
std::vector<ColourMask> random_lists(int n, Rng& rng, std::uint64_t full_num = 1, std::uint64_t full_den = 2);

/// Image of g under the permutation v -> perm[v].
Graph relabel(const Graph& g, std::span<const Vertex> perm);

/// True when adding (u, v) keeps g triangle-free and creates no induced P7.
/// Pre: g is triangle-free and P7-free, u and v non-adjacent.
bool edge_keeps_promise(const Graph& g, Vertex u, Vertex v);

enum class Injection { Triangle, InducedP7 };

/// A graph outside the promise class obtained from a promise instance by
/// adding edges among its vertices or attaching a few new vertices.
Graph inject_violation(const Graph& g, Injection kind, Rng& rng);

} // namespace p7col
