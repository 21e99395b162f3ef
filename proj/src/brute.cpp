#include "tempo/brute.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tempo/verify.hpp"

namespace tempo {

namespace {

using Clock = std::chrono::steady_clock;

struct Deadline {
    bool armed = false;
    Clock::time_point end{};
    long counter = 0;

    explicit Deadline(const SearchBudget& budget) {
        if (budget.time_limit) {
            armed = true;
            end = Clock::now() + *budget.time_limit;
        }
    }

    void tick() {
        if (!armed || (++counter & 0xfff)) return;
        if (Clock::now() > end) throw BudgetExceeded("time limit exceeded in exhaustive search");
    }
};

void check_size(const TemporalGraph& g, const SearchBudget& budget) {
    if (g.edge_count() > budget.max_edges && !budget.time_limit)
        throw BudgetExceeded("instance has " + std::to_string(g.edge_count()) +
                             " edges, over the exhaustive-search cap of " +
                             std::to_string(budget.max_edges));
    if (g.edge_count() > 62)
        throw BudgetExceeded("exhaustive search supports at most 62 edges");
}

// Fixed-width bitset over the coverable temporal vertices.
struct TvMask {
    std::vector<std::uint64_t> w;

    explicit TvMask(std::size_t bits = 0) : w((bits + 63) / 64, 0) {}
    void set(std::size_t i) { w[i / 64] |= 1ULL << (i % 64); }
    bool none() const {
        for (auto x : w)
            if (x) return false;
        return true;
    }
    void or_with(const TvMask& o) {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] |= o.w[i];
    }
    void and_not(const TvMask& o) {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] &= ~o.w[i];
    }
};

struct CoverSearch {
    const TemporalGraph& g;
    Deadline deadline;
    int m;
    std::vector<TvMask> edge_mask;       // per edge: covered temporal vertices
    std::vector<int> last_cover;         // per tv: highest edge index covering it
    std::vector<int> chosen;
    std::vector<int> found;

    CoverSearch(const TemporalGraph& gg, const SearchBudget& budget)
        : g(gg), deadline(budget), m(gg.edge_count()) {}

    // any uncovered tv only coverable by edges before pos kills the branch
    bool reachable(const TvMask& uncovered, int pos) const {
        for (std::size_t word = 0; word < uncovered.w.size(); ++word) {
            std::uint64_t bits = uncovered.w[word];
            while (bits) {
                int b = __builtin_ctzll(bits);
                bits &= bits - 1;
                if (last_cover[word * 64 + b] < pos) return false;
            }
        }
        return true;
    }

    bool dfs(int pos, int remaining, const TvMask& uncovered) {
        deadline.tick();
        if (uncovered.none()) {
            found = chosen;
            return true;
        }
        if (remaining == 0 || pos == m || !reachable(uncovered, pos)) return false;
        TvMask next = uncovered;
        next.and_not(edge_mask[pos]);
        chosen.push_back(pos);
        if (dfs(pos + 1, remaining - 1, next)) return true;
        chosen.pop_back();
        return dfs(pos + 1, remaining, uncovered);
    }
};

struct MatchingSearch {
    const TemporalGraph& g;
    Deadline deadline;
    int m;
    std::vector<std::uint64_t> conflict;  // per edge: incompatible edges
    std::vector<int> chosen;
    std::vector<int> best;
    int best_size = -1;

    MatchingSearch(const TemporalGraph& gg, const SearchBudget& budget)
        : g(gg), deadline(budget), m(gg.edge_count()), conflict(m, 0) {
        for (int i = 0; i < m; ++i) {
            for (int j = i + 1; j < m; ++j) {
                const Edge& a = g.base().edge(i);
                const Edge& b = g.base().edge(j);
                if (!a.contains(b.u) && !a.contains(b.v)) continue;
                const auto& la = g.label(i);
                const auto& lb = g.label(j);
                bool overlap =
                    std::find_first_of(la.begin(), la.end(), lb.begin(), lb.end()) != la.end();
                if (overlap) {
                    conflict[i] |= 1ULL << j;
                    conflict[j] |= 1ULL << i;
                }
            }
        }
    }

    void dfs(int pos, std::uint64_t blocked) {
        deadline.tick();
        if (static_cast<int>(chosen.size()) + (m - pos) <= best_size) return;
        if (pos == m) {
            if (static_cast<int>(chosen.size()) > best_size) {
                best_size = static_cast<int>(chosen.size());
                best = chosen;
            }
            return;
        }
        if (!(blocked >> pos & 1ULL)) {
            chosen.push_back(pos);
            dfs(pos + 1, blocked | conflict[pos]);
            chosen.pop_back();
        }
        dfs(pos + 1, blocked);
    }
};

SolutionSet edges_from_indices(const TemporalGraph& g, SolutionKind kind,
                               const std::vector<int>& idx) {
    std::vector<Edge> edges;
    for (int i : idx) edges.push_back(g.base().edge(i));
    return make_solution(kind, std::move(edges));
}

}  // namespace

BruteResult brute_min_edge_cover(const TemporalGraph& g, const SearchBudget& budget) {
    check_size(g, budget);
    auto universe = coverable_universe(g);
    std::map<TemporalVertex, std::size_t> tv_index;
    for (std::size_t i = 0; i < universe.size(); ++i) tv_index[universe[i]] = i;

    CoverSearch search(g, budget);
    search.edge_mask.assign(g.edge_count(), TvMask(universe.size()));
    search.last_cover.assign(universe.size(), -1);
    for (int i = 0; i < g.edge_count(); ++i) {
        const Edge& e = g.base().edge(i);
        for (int t : g.label(i)) {
            for (int v : {e.u, e.v}) {
                std::size_t idx = tv_index.at(TemporalVertex(v, t));
                search.edge_mask[i].set(idx);
                search.last_cover[idx] = std::max(search.last_cover[idx], i);
            }
        }
    }
    TvMask all(universe.size());
    for (std::size_t i = 0; i < universe.size(); ++i) all.set(i);

    // fewest vertices any k edges can take care of: 2k
    std::vector<bool> seen(g.vertex_count() + 1, false);
    int touched = 0;
    for (const TemporalVertex& tv : universe)
        if (!seen[tv.v]) {
            seen[tv.v] = true;
            ++touched;
        }
    for (int k = (touched + 1) / 2;; ++k) {
        if (search.dfs(0, k, all))
            return {k, edges_from_indices(g, SolutionKind::Cover, search.found)};
    }
}

BruteResult brute_max_matching(const TemporalGraph& g, const SearchBudget& budget) {
    check_size(g, budget);
    MatchingSearch search(g, budget);
    search.dfs(0, 0);
    return {search.best_size, edges_from_indices(g, SolutionKind::Matching, search.best)};
}

}  // namespace tempo
