#pragma once

#include <utility>
#include <vector>

#include "tempo/graph.hpp"

namespace tempo {

// Spanning subgraph on all n vertices with the edges active at time t.
// Throws if t is outside 1..tau.
StaticGraph snapshot(const TemporalGraph& g, int t);

// True iff no edge incident to v is active at time t.
bool is_isolated(const TemporalGraph& g, int v, int t);

// All non-isolated temporal vertices, ascending by (v, t). These are
// exactly the appearances an edge cover has to take care of.
std::vector<TemporalVertex> coverable_universe(const TemporalGraph& g);

struct CoverReport {
    bool ok = false;
    std::vector<TemporalVertex> uncovered;  // ascending
};

struct MatchingReport {
    bool ok = false;
    std::vector<std::pair<Edge, Edge>> conflicts;  // ascending pairs
};

// Checks that every non-isolated (v,t) has an incident chosen edge active
// at t. Throws if the solution uses an edge outside the graph.
CoverReport verify_edge_cover(const TemporalGraph& g, const SolutionSet& s);

// Checks pairwise compatibility: chosen edges may share a vertex only if
// their label sets are disjoint. Throws if the solution uses an edge
// outside the graph.
MatchingReport verify_matching(const TemporalGraph& g, const SolutionSet& m);

}  // namespace tempo
