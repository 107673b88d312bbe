#pragma once

#include "p7col/graph.hpp"

#include <string>

namespace p7col {

/// Structure report as JSON (1-indexed vertices): promise status, and per
/// connected component its anchor and decomposition (bipartition, C5
/// skeleton with components and chains, or blown-up C7 classes).
std::string explain_structure(const Graph& g, int threads = 1);

/// Graphviz rendering with vertices coloured by their skeleton role.
std::string structure_dot(const Graph& g);

} // namespace p7col
