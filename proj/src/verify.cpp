#include "tempo/verify.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tempo {

StaticGraph snapshot(const TemporalGraph& g, int t) {
    if (t < 1 || t > g.tau())
        throw std::invalid_argument("snapshot time " + std::to_string(t) + " outside lifetime");
    std::vector<Edge> active;
    for (int i = 0; i < g.edge_count(); ++i)
        if (g.active(i, t)) active.push_back(g.base().edge(i));
    return StaticGraph(g.vertex_count(), std::move(active));
}

bool is_isolated(const TemporalGraph& g, int v, int t) {
    if (v < 1 || v > g.vertex_count())
        throw std::invalid_argument("vertex " + std::to_string(v) + " out of range");
    if (t < 1 || t > g.tau())
        throw std::invalid_argument("time " + std::to_string(t) + " outside lifetime");
    for (int ei : g.base().incident(v))
        if (g.active(ei, t)) return false;
    return true;
}

std::vector<TemporalVertex> coverable_universe(const TemporalGraph& g) {
    std::vector<TemporalVertex> out;
    for (int v = 1; v <= g.vertex_count(); ++v)
        for (int t = 1; t <= g.tau(); ++t)
            if (!is_isolated(g, v, t)) out.emplace_back(v, t);
    return out;
}

namespace {

void check_edges_exist(const TemporalGraph& g, const SolutionSet& s) {
    for (const Edge& e : s.edges)
        if (!g.base().has_edge(e))
            throw std::invalid_argument("solution edge (" + std::to_string(e.u) + "," +
                                        std::to_string(e.v) + ") not in graph");
}

}  // namespace

CoverReport verify_edge_cover(const TemporalGraph& g, const SolutionSet& s) {
    check_edges_exist(g, s);
    CoverReport rep;
    for (const TemporalVertex& tv : coverable_universe(g)) {
        bool covered = false;
        for (const Edge& e : s.edges) {
            if (!e.contains(tv.v)) continue;
            const auto& lab = g.label(e);
            if (std::binary_search(lab.begin(), lab.end(), tv.t)) {
                covered = true;
                break;
            }
        }
        if (!covered) rep.uncovered.push_back(tv);
    }
    rep.ok = rep.uncovered.empty();
    return rep;
}

MatchingReport verify_matching(const TemporalGraph& g, const SolutionSet& m) {
    check_edges_exist(g, m);
    MatchingReport rep;
    for (std::size_t i = 0; i < m.edges.size(); ++i) {
        for (std::size_t j = i + 1; j < m.edges.size(); ++j) {
            const Edge& a = m.edges[i];
            const Edge& b = m.edges[j];
            bool share = a.contains(b.u) || a.contains(b.v);
            if (!share) continue;
            const auto& la = g.label(a);
            const auto& lb = g.label(b);
            std::vector<int> inter;
            std::set_intersection(la.begin(), la.end(), lb.begin(), lb.end(),
                                  std::back_inserter(inter));
            if (!inter.empty()) rep.conflicts.emplace_back(std::min(a, b), std::max(a, b));
        }
    }
    std::sort(rep.conflicts.begin(), rep.conflicts.end());
    rep.ok = rep.conflicts.empty();
    return rep;
}

}  // namespace tempo
