#pragma once

#include <vector>

namespace tempo {

// Universe plus an ordered collection of subsets of it.
struct SetSystem {
    std::vector<int> universe;             // sorted ascending, positive ints
    std::vector<std::vector<int>> sets;    // each sorted ascending
};

// Indices of a cover of the universe, in pick order. Each step takes the
// set covering the most still-uncovered elements, ties to the lowest
// index, until nothing is uncovered. Throws std::invalid_argument if the
// union of the sets misses part of the universe. The result size is
// within H(|U|) of the optimum.
std::vector<int> greedy_set_cover(const SetSystem& sys);

// H(k) = 1 + 1/2 + ... + 1/k; H(0) = 0.
double harmonic(int k);

}  // namespace tempo
