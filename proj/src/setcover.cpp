#include "tempo/setcover.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace tempo {

std::vector<int> greedy_set_cover(const SetSystem& sys) {
    std::set<int> uncovered(sys.universe.begin(), sys.universe.end());
    {
        std::set<int> reachable;
        for (const auto& s : sys.sets) reachable.insert(s.begin(), s.end());
        for (int x : uncovered)
            if (!reachable.count(x))
                throw std::invalid_argument("universe element " + std::to_string(x) +
                                            " is in no set");
    }
    std::vector<int> picks;
    while (!uncovered.empty()) {
        int best = -1;
        std::size_t best_gain = 0;
        for (std::size_t i = 0; i < sys.sets.size(); ++i) {
            std::size_t gain = 0;
            for (int x : sys.sets[i]) gain += uncovered.count(x);
            if (gain > best_gain) {
                best_gain = gain;
                best = static_cast<int>(i);
            }
        }
        // best_gain > 0 because every uncovered element is in some set
        picks.push_back(best);
        for (int x : sys.sets[best]) uncovered.erase(x);
    }
    return picks;
}

double harmonic(int k) {
    double h = 0.0;
    for (int i = 1; i <= k; ++i) h += 1.0 / i;
    return h;
}

}  // namespace tempo
