#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "tempo/graph.hpp"
#include "tempo/setcover.hpp"

namespace th {

struct Rng {
    std::mt19937_64 eng;

    explicit Rng(std::uint64_t seed) : eng(seed) {}

    std::uint64_t next() { return eng(); }
    int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    bool coin(double p) { return unit() < p; }
};

// shorthand: build a temporal graph from (edge, labels) pairs; tau defaults
// to the largest label used
inline tempo::TemporalGraph tg(int n,
                               std::vector<std::pair<tempo::Edge, std::vector<int>>> items,
                               int tau = 0) {
    std::sort(items.begin(), items.end());
    if (tau == 0) {
        tau = 1;
        for (const auto& [e, lab] : items)
            for (int t : lab) tau = std::max(tau, t);
    }
    std::vector<tempo::Edge> edges;
    std::vector<std::vector<int>> labels;
    for (auto& [e, lab] : items) {
        edges.push_back(e);
        labels.push_back(std::move(lab));
    }
    return tempo::TemporalGraph(tempo::StaticGraph(n, std::move(edges)), tau, std::move(labels));
}

// random temporal graph: up to max_edges distinct edges, non-empty labels
inline tempo::TemporalGraph random_instance(Rng& rng, int n, int max_edges, int tau) {
    std::vector<tempo::Edge> pairs;
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v) pairs.emplace_back(u, v);
    for (int i = static_cast<int>(pairs.size()) - 1; i > 0; --i)
        std::swap(pairs[i], pairs[rng.below(i + 1)]);
    int m = rng.below(std::min<int>(max_edges, static_cast<int>(pairs.size())) + 1);
    std::vector<tempo::Edge> edges(pairs.begin(), pairs.begin() + m);
    std::sort(edges.begin(), edges.end());
    std::vector<std::vector<int>> labels;
    for (int i = 0; i < m; ++i) {
        std::vector<int> lab;
        while (lab.empty())
            for (int t = 1; t <= tau; ++t)
                if (rng.coin(0.5)) lab.push_back(t);
        labels.push_back(std::move(lab));
    }
    return tempo::TemporalGraph(tempo::StaticGraph(n, std::move(edges)), tau, std::move(labels));
}

// random connected static graph: spanning tree plus extra edges
inline tempo::StaticGraph random_connected(Rng& rng, int n, int extra) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
    std::vector<tempo::Edge> edges;
    for (int i = 1; i < n; ++i) edges.emplace_back(perm[i], perm[rng.below(i)]);
    std::sort(edges.begin(), edges.end());
    for (int tries = 0; tries < extra * 4 && static_cast<int>(edges.size()) < n - 1 + extra;
         ++tries) {
        int u = 1 + rng.below(n);
        int v = 1 + rng.below(n);
        if (u == v) continue;
        tempo::Edge e(u, v);
        auto it = std::lower_bound(edges.begin(), edges.end(), e);
        if (it != edges.end() && *it == e) continue;
        edges.insert(it, e);
    }
    return tempo::StaticGraph(n, std::move(edges));
}

// maximum matching by branching on the lowest live vertex; independent of
// the blossom implementation
inline int matching_oracle_rec(const tempo::StaticGraph& g, unsigned dead,
                               std::map<unsigned, int>& memo) {
    int pick = -1;
    for (int v = 1; v <= g.vertex_count() && pick < 0; ++v) {
        if (dead >> v & 1u) continue;
        for (int ei : g.incident(v))
            if (!(dead >> g.edge(ei).other(v) & 1u)) {
                pick = v;
                break;
            }
    }
    if (pick < 0) return 0;
    auto it = memo.find(dead);
    if (it != memo.end()) return it->second;
    int best = matching_oracle_rec(g, dead | (1u << pick), memo);
    for (int ei : g.incident(pick)) {
        int u = g.edge(ei).other(pick);
        if (dead >> u & 1u) continue;
        best = std::max(best,
                        1 + matching_oracle_rec(g, dead | (1u << pick) | (1u << u), memo));
    }
    memo[dead] = best;
    return best;
}

inline int matching_oracle(const tempo::StaticGraph& g) {
    std::map<unsigned, int> memo;
    return matching_oracle_rec(g, 0, memo);
}

// exhaustive minimum set cover size, -1 when not coverable
inline int setcover_oracle(const tempo::SetSystem& sys) {
    int m = static_cast<int>(sys.sets.size());
    std::map<int, int> elem_bit;
    for (int x : sys.universe) {
        int b = static_cast<int>(elem_bit.size());
        elem_bit[x] = b;
    }
    std::uint64_t full = sys.universe.empty()
                             ? 0
                             : (~0ULL >> (64 - static_cast<int>(sys.universe.size())));
    std::vector<std::uint64_t> masks(m, 0);
    for (int i = 0; i < m; ++i)
        for (int x : sys.sets[i])
            if (elem_bit.count(x)) masks[i] |= 1ULL << elem_bit[x];
    int best = -1;
    for (std::uint32_t pick = 0; pick < (1u << m); ++pick) {
        int size = __builtin_popcount(pick);
        if (best >= 0 && size >= best) continue;
        std::uint64_t got = 0;
        for (int i = 0; i < m; ++i)
            if (pick >> i & 1u) got |= masks[i];
        if (got == full) best = size;
    }
    return best;
}

// largest number of pairwise disjoint sets, by direct enumeration
inline int setpacking_oracle(const tempo::SetSystem& sys) {
    int m = static_cast<int>(sys.sets.size());
    int best = 0;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        std::set<int> seen;
        bool ok = true;
        int count = 0;
        for (int i = 0; i < m && ok; ++i) {
            if (!(mask & (1u << i))) continue;
            ++count;
            for (int x : sys.sets[i]) ok = ok && seen.insert(x).second;
        }
        if (ok) best = std::max(best, count);
    }
    return best;
}

// random coverable set system over a contiguous universe
inline tempo::SetSystem random_system(Rng& rng, int universe, int sets) {
    tempo::SetSystem sys;
    for (int x = 1; x <= universe; ++x) sys.universe.push_back(x);
    for (int i = 0; i < sets; ++i) {
        std::vector<int> s;
        while (s.empty())
            for (int x = 1; x <= universe; ++x)
                if (rng.coin(0.4)) s.push_back(x);
        sys.sets.push_back(std::move(s));
    }
    // guarantee coverability by rounding out the last set
    for (int x = 1; x <= universe; ++x) {
        bool hit = false;
        for (const auto& s : sys.sets) hit = hit || std::count(s.begin(), s.end(), x);
        if (!hit) {
            sys.sets.back().push_back(x);
            std::sort(sys.sets.back().begin(), sys.sets.back().end());
        }
    }
    return sys;
}

// maximum independent set in the edge-conflict graph (edges conflict when
// they share a vertex and a time); a second road to the matching optimum
inline int conflict_mis_rec(const std::vector<std::uint32_t>& adj, std::uint32_t live) {
    if (!live) return 0;
    int v = __builtin_ctz(live);
    int skip = conflict_mis_rec(adj, live & ~(1u << v));
    int take = 1 + conflict_mis_rec(adj, live & ~(1u << v) & ~adj[v]);
    return std::max(skip, take);
}

inline int conflict_mis_oracle(const tempo::TemporalGraph& g) {
    int m = g.edge_count();
    std::vector<std::uint32_t> adj(m, 0);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            const tempo::Edge& a = g.base().edge(i);
            const tempo::Edge& b = g.base().edge(j);
            if (!a.contains(b.u) && !a.contains(b.v)) continue;
            const auto& la = g.label(i);
            const auto& lb = g.label(j);
            bool overlap =
                std::find_first_of(la.begin(), la.end(), lb.begin(), lb.end()) != la.end();
            if (overlap) {
                adj[i] |= 1u << j;
                adj[j] |= 1u << i;
            }
        }
    return conflict_mis_rec(adj, m == 0 ? 0 : (~0u >> (32 - m)));
}

}  // namespace th
