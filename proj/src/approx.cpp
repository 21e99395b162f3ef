#include "tempo/approx.hpp"

#include <algorithm>
#include <set>

#include "tempo/matching.hpp"
#include "tempo/setcover.hpp"
#include "tempo/verify.hpp"

namespace tempo {

CoverApproxReport greedy_temporal_edge_cover(const TemporalGraph& g) {
    int n = g.vertex_count();
    int tau = g.tau();
    std::vector<std::vector<char>> covered(n + 1, std::vector<char>(tau + 1, 0));
    std::vector<std::vector<char>> coverable(n + 1, std::vector<char>(tau + 1, 0));
    for (int i = 0; i < g.edge_count(); ++i) {
        const Edge& e = g.base().edge(i);
        for (int t : g.label(i)) coverable[e.u][t] = coverable[e.v][t] = 1;
    }

    CoverApproxReport rep;
    std::set<Edge> picked;
    for (int v = 1; v <= n; ++v) {
        std::vector<int> todo;
        for (int t = 1; t <= tau; ++t)
            if (coverable[v][t] && !covered[v][t]) todo.push_back(t);
        CoverStep step;
        step.vertex = v;
        step.universe_size = static_cast<int>(todo.size());
        if (!todo.empty()) {
            // set cover over the incident edges, restricted to the open times
            SetSystem sub;
            sub.universe = todo;
            std::vector<int> sub_edges;
            for (int ei : g.base().incident(v)) {
                std::vector<int> s;
                for (int t : g.label(ei))
                    if (coverable[v][t] && !covered[v][t]) s.push_back(t);
                sub.sets.push_back(std::move(s));
                sub_edges.push_back(ei);
            }
            for (int pick : greedy_set_cover(sub)) {
                int ei = sub_edges[pick];
                const Edge& e = g.base().edge(ei);
                if (picked.insert(e).second) ++step.edges_added;
                for (int t : g.label(ei)) covered[e.u][t] = covered[e.v][t] = 1;
            }
        }
        rep.steps.push_back(step);
    }
    rep.solution = make_solution(SolutionKind::Cover,
                                 std::vector<Edge>(picked.begin(), picked.end()));
    rep.bound_factor = 2.0 * harmonic(tau);
    return rep;
}

MatchingApproxReport snapshot_matching_approx(const TemporalGraph& g) {
    MatchingApproxReport rep;
    std::vector<Edge> best;
    rep.best_time = 1;
    for (int t = 1; t <= g.tau(); ++t) {
        std::vector<Edge> m = max_matching_static(snapshot(g, t));
        rep.snapshot_sizes.push_back(static_cast<int>(m.size()));
        if (m.size() > best.size()) {
            best = std::move(m);
            rep.best_time = t;
        }
    }
    rep.solution = make_solution(SolutionKind::Matching, std::move(best));
    rep.bound_factor = static_cast<double>(g.tau());
    return rep;
}

}  // namespace tempo
