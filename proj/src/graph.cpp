#include "tempo/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace tempo {

StaticGraph::StaticGraph(int n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)) {
    if (n_ < 0) throw std::invalid_argument("vertex count must be non-negative");
    std::sort(edges_.begin(), edges_.end());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const Edge& e = edges_[i];
        if (e.u == e.v) throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u));
        if (e.u < 1 || e.v > n_)
            throw std::invalid_argument("edge endpoint out of range: (" + std::to_string(e.u) +
                                        "," + std::to_string(e.v) + ")");
        if (i > 0 && edges_[i - 1] == e)
            throw std::invalid_argument("duplicate edge (" + std::to_string(e.u) + "," +
                                        std::to_string(e.v) + ")");
    }
    incident_.assign(static_cast<std::size_t>(n_) + 1, {});
    for (int i = 0; i < edge_count(); ++i) {
        incident_[edges_[i].u].push_back(i);
        incident_[edges_[i].v].push_back(i);
    }
}

int StaticGraph::edge_index(Edge e) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it == edges_.end() || *it != e) return -1;
    return static_cast<int>(it - edges_.begin());
}

const std::vector<int>& StaticGraph::incident(int v) const {
    if (v < 1 || v > n_) throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
    return incident_[v];
}

TemporalGraph::TemporalGraph(StaticGraph base, int tau, std::vector<std::vector<int>> labels)
    : base_(std::move(base)), tau_(tau), labels_(std::move(labels)) {
    if (tau_ < 1) throw std::invalid_argument("lifetime must be at least 1");
    if (labels_.size() != static_cast<std::size_t>(base_.edge_count()))
        throw std::invalid_argument("label list does not match edge count");
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        auto& lab = labels_[i];
        std::sort(lab.begin(), lab.end());
        lab.erase(std::unique(lab.begin(), lab.end()), lab.end());
        if (lab.empty())
            throw std::invalid_argument("empty label on edge (" + std::to_string(base_.edge(static_cast<int>(i)).u) +
                                        "," + std::to_string(base_.edge(static_cast<int>(i)).v) + ")");
        if (lab.front() < 1 || lab.back() > tau_)
            throw std::invalid_argument("label time out of range on edge (" +
                                        std::to_string(base_.edge(static_cast<int>(i)).u) + "," +
                                        std::to_string(base_.edge(static_cast<int>(i)).v) + ")");
    }
}

const std::vector<int>& TemporalGraph::label(Edge e) const {
    int idx = base_.edge_index(e);
    if (idx < 0)
        throw std::invalid_argument("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                    ") not in graph");
    return labels_[idx];
}

bool TemporalGraph::active(int edge_idx, int t) const {
    const auto& lab = labels_[edge_idx];
    return std::binary_search(lab.begin(), lab.end(), t);
}

std::string to_string(SolutionKind kind) {
    return kind == SolutionKind::Cover ? "cover" : "matching";
}

SolutionSet make_solution(SolutionKind kind, std::vector<Edge> edges) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return SolutionSet{kind, std::move(edges)};
}

}  // namespace tempo
