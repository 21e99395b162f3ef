#pragma once

#include <compare>
#include <string>
#include <vector>

namespace tempo {

// Undirected edge, normalized to u < v.
struct Edge {
    int u = 0;
    int v = 0;

    Edge() = default;
    Edge(int a, int b) : u(a < b ? a : b), v(a < b ? b : a) {}

    bool contains(int x) const { return x == u || x == v; }
    int other(int x) const { return x == u ? v : u; }

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Simple undirected graph on vertices 1..n. Edge list is sorted and free of
// self-loops and duplicates; the constructor enforces this.
class StaticGraph {
public:
    StaticGraph() = default;
    StaticGraph(int n, std::vector<Edge> edges);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int idx) const { return edges_[idx]; }

    int edge_index(Edge e) const;  // -1 if absent
    bool has_edge(Edge e) const { return edge_index(e) >= 0; }

    // Indices into edges() of the edges incident to v, ascending.
    const std::vector<int>& incident(int v) const;
    int degree(int v) const { return static_cast<int>(incident(v).size()); }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> incident_;
};

// A vertex paired with one time step of the lifetime.
struct TemporalVertex {
    int v = 0;
    int t = 0;

    TemporalVertex() = default;
    TemporalVertex(int vv, int tt) : v(vv), t(tt) {}

    friend auto operator<=>(const TemporalVertex&, const TemporalVertex&) = default;
};

// Static graph plus a non-empty sorted set of active times per edge, all
// within 1..tau.
class TemporalGraph {
public:
    TemporalGraph() : tau_(1) {}
    TemporalGraph(StaticGraph base, int tau, std::vector<std::vector<int>> labels);

    const StaticGraph& base() const { return base_; }
    int vertex_count() const { return base_.vertex_count(); }
    int edge_count() const { return base_.edge_count(); }
    int tau() const { return tau_; }

    const std::vector<int>& label(int edge_idx) const { return labels_[edge_idx]; }
    const std::vector<int>& label(Edge e) const;
    bool active(int edge_idx, int t) const;

private:
    StaticGraph base_;
    int tau_ = 1;
    std::vector<std::vector<int>> labels_;  // aligned with base_.edges()
};

enum class SolutionKind { Cover, Matching };

std::string to_string(SolutionKind kind);

// A candidate solution: a subset of the underlying edges, sorted and unique.
struct SolutionSet {
    SolutionKind kind = SolutionKind::Cover;
    std::vector<Edge> edges;
};

// Normalizes (sorts, dedupes) the edge list.
SolutionSet make_solution(SolutionKind kind, std::vector<Edge> edges);

}  // namespace tempo
