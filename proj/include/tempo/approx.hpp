#pragma once

#include <vector>

#include "tempo/graph.hpp"

namespace tempo {

struct CoverStep {
    int vertex = 0;
    int universe_size = 0;  // appearances of the vertex still uncovered
    int edges_added = 0;    // newly picked edges (already-chosen picks don't recount)
};

struct CoverApproxReport {
    SolutionSet solution;
    std::vector<CoverStep> steps;  // one per vertex, ascending vertex id
    double bound_factor = 0.0;     // 2 * H(tau)
};

// Sweeps vertices in ascending id order; for each, covers its remaining
// uncovered appearances with a greedy set cover over the incident edges'
// label sets, then marks both endpoints of every picked edge covered at
// the edge's times. Result is within 2*H(tau) of the optimum.
CoverApproxReport greedy_temporal_edge_cover(const TemporalGraph& g);

struct MatchingApproxReport {
    SolutionSet solution;
    std::vector<int> snapshot_sizes;  // max static matching size per time step
    int best_time = 0;                // earliest snapshot of maximum size
    double bound_factor = 0.0;        // tau
};

// Largest per-snapshot maximum matching, which is a temporal matching;
// the optimum is at most tau times its size.
MatchingApproxReport snapshot_matching_approx(const TemporalGraph& g);

}  // namespace tempo
