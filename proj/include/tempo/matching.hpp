#pragma once

#include <vector>

#include "tempo/graph.hpp"

namespace tempo {

// Maximum-cardinality matching in a general graph, Edmonds' blossom
// contraction, O(V^3). Returns the matched edges sorted.
std::vector<Edge> max_matching_static(const StaticGraph& g);

// Minimum edge cover: take a maximum matching and add, for every
// unsaturated vertex, its lexicographically smallest incident edge.
// Size comes out as n - |maximum matching|. Throws std::invalid_argument
// if some vertex is isolated (then no cover exists).
std::vector<Edge> min_edge_cover_static(const StaticGraph& g);

}  // namespace tempo
