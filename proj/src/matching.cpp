#include "tempo/matching.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <string>

namespace tempo {

namespace {

// State for one augmenting-path search. Vertices are 1..n, 0 = none.
struct Blossom {
    int n;
    std::vector<std::vector<int>> adj;
    std::vector<int> match, p, base;
    std::vector<bool> used, flower;

    explicit Blossom(const StaticGraph& g)
        : n(g.vertex_count()),
          adj(n + 1),
          match(n + 1, 0),
          p(n + 1, 0),
          base(n + 1, 0),
          used(n + 1, false),
          flower(n + 1, false) {
        for (const Edge& e : g.edges()) {
            adj[e.u].push_back(e.v);
            adj[e.v].push_back(e.u);
        }
    }

    int lca(int a, int b) {
        std::vector<bool> seen(n + 1, false);
        for (;;) {
            a = base[a];
            seen[a] = true;
            if (!match[a]) break;
            a = p[match[a]];
        }
        for (;;) {
            b = base[b];
            if (seen[b]) return b;
            b = p[match[b]];
        }
    }

    void mark_path(int v, int b, int child) {
        while (base[v] != b) {
            flower[base[v]] = true;
            flower[base[match[v]]] = true;
            p[v] = child;
            child = match[v];
            v = p[match[v]];
        }
    }

    bool find_path(int root) {
        std::fill(used.begin(), used.end(), false);
        std::fill(p.begin(), p.end(), 0);
        for (int i = 0; i <= n; ++i) base[i] = i;
        used[root] = true;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int to : adj[v]) {
                if (base[v] == base[to] || match[v] == to) continue;
                if (to == root || (match[to] && p[match[to]])) {
                    // odd cycle: contract the blossom around the common base
                    int cur = lca(v, to);
                    std::fill(flower.begin(), flower.end(), false);
                    mark_path(v, cur, to);
                    mark_path(to, cur, v);
                    for (int i = 1; i <= n; ++i) {
                        if (flower[base[i]]) {
                            base[i] = cur;
                            if (!used[i]) {
                                used[i] = true;
                                q.push(i);
                            }
                        }
                    }
                } else if (!p[to]) {
                    p[to] = v;
                    if (!match[to]) {
                        // exposed vertex reached: flip the path back to root
                        int u = to;
                        while (u) {
                            int pv = p[u];
                            int ppv = match[pv];
                            match[u] = pv;
                            match[pv] = u;
                            u = ppv;
                        }
                        return true;
                    }
                    used[match[to]] = true;
                    q.push(match[to]);
                }
            }
        }
        return false;
    }
};

}  // namespace

std::vector<Edge> max_matching_static(const StaticGraph& g) {
    Blossom bl(g);
    for (int v = 1; v <= bl.n; ++v)
        if (!bl.match[v]) bl.find_path(v);
    std::vector<Edge> out;
    for (int v = 1; v <= bl.n; ++v)
        if (bl.match[v] > v) out.emplace_back(v, bl.match[v]);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Edge> min_edge_cover_static(const StaticGraph& g) {
    for (int v = 1; v <= g.vertex_count(); ++v)
        if (g.degree(v) == 0)
            throw std::invalid_argument("vertex " + std::to_string(v) +
                                        " is isolated, no edge cover exists");
    std::vector<Edge> cover = max_matching_static(g);
    std::vector<bool> saturated(g.vertex_count() + 1, false);
    for (const Edge& e : cover) saturated[e.u] = saturated[e.v] = true;
    for (int v = 1; v <= g.vertex_count(); ++v)
        if (!saturated[v]) cover.push_back(g.edge(g.incident(v).front()));
    std::sort(cover.begin(), cover.end());
    return cover;
}

}  // namespace tempo
