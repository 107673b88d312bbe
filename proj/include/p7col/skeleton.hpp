#pragma once

#include "p7col/graph.hpp"
#include "p7col/recognition.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace p7col {

/// Indices on the anchor cycle are 0..4 and taken modulo 5.
inline int cyc5(int i) { return ((i % 5) + 5) % 5; }

/// A non-trivial component of G - S split into its two stable sides.
struct ComponentInfo {
    std::vector<Vertex> vertices;
    std::array<std::vector<Vertex>, 2> sides;
    /// Common S-neighbourhood of each side.
    std::array<VertexSet, 2> side_nbhd;
    /// Neighbourhood of the whole component in each T_i.
    std::array<VertexSet, 5> t_nbhd;
};

/// A non-trivial component of G[W + D_i].
struct WdComponent {
    int index = 0;
    std::vector<Vertex> vertices;
    std::vector<Vertex> w_side;
    std::vector<Vertex> d_side;
    VertexSet w_t_nbhd;
    VertexSet d_t_nbhd;
    VertexSet t_nbhd;
};

struct Skeleton {
    std::array<Vertex, 5> c{};
    /// T[i]: neighbours of C exactly {c[i-1], c[i+1]}.
    std::array<VertexSet, 5> t;
    /// D[i]: neighbours of C exactly {c[i]}.
    std::array<VertexSet, 5> d;
    VertexSet s;
    /// Isolated vertices of G - S.
    VertexSet w;
    std::vector<ComponentInfo> components;
};

/// Nested T_i-neighbourhoods: levels[0] = {v0}, levels[1..r] the distinct
/// non-empty component neighbourhoods in increasing order, levels[r+1] = T_i.
struct Chain {
    int index = 0;
    Vertex v0 = -1;
    int r = 0;
    std::vector<VertexSet> levels;
};

/// Classifies the neighbours of the anchor C5 and validates the structure of
/// G - S (stable T/D sets, components free of D-neighbours, bipartite with
/// uniform S-neighbourhoods per side). Pre: c5 induces C5 and g is connected.
std::variant<Skeleton, PromiseViolation> build_skeleton(const Graph& g, std::span<const Vertex, 5> c5);

/// Non-trivial components of G[W + D_i], checking that no W vertex sees both
/// D_i and a neighbouring D set and that each side has one T_i-neighbourhood.
std::variant<std::vector<WdComponent>, PromiseViolation> wd_components(const Graph& g, const Skeleton& sk, int i);

/// Pre: T_i non-empty. `wd` are the components of G[W + D_i].
std::variant<Chain, PromiseViolation> build_chain(const Graph& g, const Skeleton& sk,
                                                  std::span<const WdComponent> wd, int i);

/// Skeleton plus every G[W + D_i] component list and every chain
/// (chains[i] is empty when T_i is).
struct SkeletonAnalysis {
    Skeleton skeleton;
    std::array<std::vector<WdComponent>, 5> wd;
    std::array<std::optional<Chain>, 5> chains;
};

std::variant<SkeletonAnalysis, PromiseViolation> analyse_skeleton(const Graph& g, std::span<const Vertex, 5> c5);

} // namespace p7col
