#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>

#include "tempo/graph.hpp"

namespace tempo {

// Guard rails for the exhaustive solvers. Instances over max_edges are
// refused outright unless a deadline is given; with a deadline the search
// runs until it finishes or the clock runs out.
struct SearchBudget {
    int max_edges = 22;
    std::optional<std::chrono::milliseconds> time_limit;
};

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct BruteResult {
    int size = 0;
    SolutionSet solution;
};

// Exhaustive minimum temporal edge cover. Deterministic: returns the
// lexicographically least optimal edge set (edges compared as sorted
// (u,v) sequences).
BruteResult brute_min_edge_cover(const TemporalGraph& g, const SearchBudget& budget = {});

// Exhaustive maximum temporal matching, same determinism guarantee.
BruteResult brute_max_matching(const TemporalGraph& g, const SearchBudget& budget = {});

}  // namespace tempo
