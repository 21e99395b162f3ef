#pragma once

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "tempo/graph.hpp"
#include "tempo/treedec.hpp"

namespace tempo {

// Table key at a decomposition node: a subset of the node's bag edges and
// a subset of the node's coverable bag appearances, both in the canonical
// (sorted) order of the node's BagContext. Only feasible keys are stored;
// a missing key means "no partial solution realizes this state".
struct DPKey {
    std::uint32_t edges = 0;
    std::uint64_t tvs = 0;

    friend bool operator==(const DPKey&, const DPKey&) = default;
    friend auto operator<=>(const DPKey&, const DPKey&) = default;
};

struct DPKeyHash {
    std::size_t operator()(const DPKey& k) const {
        std::uint64_t x = k.tvs ^ (static_cast<std::uint64_t>(k.edges) * 0x9e3779b97f4a7c15ULL);
        x ^= x >> 30;
        x *= 0xbf58476d1ce4e5b9ULL;
        x ^= x >> 27;
        x *= 0x94d049bb133111ebULL;
        x ^= x >> 31;
        return static_cast<std::size_t>(x);
    }
};

struct DPEntry {
    int value = 0;
    DPKey child0, child1;  // optimal child states, for solution extraction
};

using DPTable = std::unordered_map<DPKey, DPEntry, DPKeyHash>;

// Bag edges are the graph edges with both endpoints in the bag. Bag
// temporal vertices are the coverable (v,t) with v in the bag; coverable
// is always judged against the whole graph.
struct BagContext {
    std::vector<int> bag;                      // sorted
    std::vector<Edge> edges;                   // sorted
    std::vector<int> edge_ids;                 // into g.base().edges()
    std::vector<TemporalVertex> tvs;           // sorted
    std::vector<std::uint64_t> edge_tvs;       // per bag edge: its endpoint appearances
    std::vector<std::uint32_t> vertex_edges;   // per bag position: incident bag edges
    std::vector<std::uint64_t> vertex_tvs;     // per bag position: its appearances
    std::uint64_t all_tvs = 0;

    int edge_count() const { return static_cast<int>(edges.size()); }
    int tv_count() const { return static_cast<int>(tvs.size()); }
    int bag_index(int v) const;  // -1 if absent
};

struct NodeStat {
    int node = 0;
    std::size_t entries = 0;
    int bag_size = 0;
    int bag_edges = 0;
    int bag_tvs = 0;
};

struct DPStats {
    std::vector<NodeStat> per_node;
    std::size_t total_entries() const;
};

class TemporalDP {
public:
    // kind selects which problem the tables solve. Throws
    // std::invalid_argument if nd is not a valid nice decomposition of
    // the underlying graph.
    TemporalDP(const TemporalGraph& g, const NiceTreeDecomposition& nd, SolutionKind kind);

    int optimal_value() const;
    SolutionSet extract_solution() const;

    const DPTable& table(int node) const { return tables_[node]; }
    const BagContext& context(int node) const { return ctx_[node]; }
    int node_count() const { return static_cast<int>(tables_.size()); }
    DPStats stats() const;

    // one line per table entry: <node> <S-bits> <C-bits> <value>, masks as
    // LSB-first bit strings in canonical context order, '-' when empty
    std::string dump_tables() const;

private:
    const TemporalGraph& g_;
    const NiceTreeDecomposition& nd_;
    SolutionKind kind_;
    std::vector<BagContext> ctx_;
    std::vector<DPTable> tables_;

    void compute_node(int node);
    void collect(int node, const DPKey& key, std::vector<Edge>& out) const;
};

struct FptResult {
    int size = 0;
    SolutionSet solution;
    DPStats stats;
    int width = 0;
};

FptResult fpt_min_edge_cover(const TemporalGraph& g, const NiceTreeDecomposition& nd);
FptResult fpt_max_matching(const TemporalGraph& g, const NiceTreeDecomposition& nd);

}  // namespace tempo
