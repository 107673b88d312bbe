#pragma once

#include "p7col/graph.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace p7col {

enum class ViolationKind { Triangle, InducedP7, StructureBreach };

const char* to_string(ViolationKind kind);

/// Evidence that a graph lies outside the {P7, triangle}-free class.
///
/// Triangle and InducedP7 witnesses are explicit vertex lists that can be
/// checked with is_triangle / is_induced_path. A StructureBreach carries the
/// failed check in `note` and, when useful, the vertices involved.
struct PromiseViolation {
    ViolationKind kind = ViolationKind::StructureBreach;
    std::vector<Vertex> vertices;
    std::string note;

    static PromiseViolation triangle(Vertex a, Vertex b, Vertex c);
    static PromiseViolation induced_p7(std::vector<Vertex> path);
    static PromiseViolation breach(std::string note, std::vector<Vertex> vertices = {});
};

bool is_triangle(const Graph& g, std::span<const Vertex> vertices);
/// True iff the vertices are distinct and induce exactly the path in the given order.
bool is_induced_path(const Graph& g, std::span<const Vertex> path);
/// Triangle and P7 witnesses must verify; a breach needs a non-empty note.
bool witness_is_valid(const Graph& g, const PromiseViolation& violation);

/// Checks a Triangle/InducedP7 candidate and degrades it to a StructureBreach
/// (tagged with `context`) if it does not verify.
PromiseViolation checked_witness(const Graph& g, PromiseViolation candidate, const std::string& context);

/// Lexicographically smallest triangle.
std::optional<std::array<Vertex, 3>> find_triangle(const Graph& g, int threads = 1);

/// Extends `seed` (an induced path) at either end to an induced path on
/// `length` vertices. Returns the full path in order, or nothing.
std::optional<std::vector<Vertex>> extend_induced_path(const Graph& g, std::span<const Vertex> seed, int length);

/// Some induced P7, searched on one representative per false-twin class
/// (an induced path on four or more vertices never contains two false twins).
/// Deterministic: the result does not depend on `threads`.
std::optional<std::vector<Vertex>> find_induced_p7(const Graph& g, int threads = 1);

/// Serial exhaustive search on the full vertex set, without twin reduction.
std::optional<std::vector<Vertex>> find_induced_p7_reference(const Graph& g);

/// Partition into classes of vertices with identical neighbourhoods.
/// Classes are ordered by smallest member; members ascending.
std::vector<std::vector<Vertex>> false_twin_classes(const Graph& g);

/// A minimum-length odd cycle (chordless), or nothing if g is bipartite.
/// Ties: smallest starting vertex, then lexicographically smallest cycle.
std::optional<std::vector<Vertex>> shortest_odd_cycle(const Graph& g);

struct TwinDecomposition {
    /// classes[i] holds c7[i] and every vertex whose cycle neighbours are
    /// exactly c7[i-1] and c7[i+1].
    std::array<std::vector<Vertex>, 7> classes;
    std::array<Vertex, 7> representative{};
    std::vector<int> class_of;
};

/// Pre: g connected, c7 induces C7, and g has no odd cycle shorter than 7.
std::variant<TwinDecomposition, PromiseViolation> recognize_blownup_c7(const Graph& g,
                                                                      std::span<const Vertex, 7> c7);

/// Nothing when g is triangle-free and P7-free, else a verified witness.
std::optional<PromiseViolation> check_promise(const Graph& g, int threads = 1);

} // namespace p7col
