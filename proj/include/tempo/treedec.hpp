#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tempo/graph.hpp"

namespace tempo {

// Rooted tree decomposition: bags[i] is sorted, parent[i] == -1 exactly at
// the root.
struct TreeDecomposition {
    std::vector<std::vector<int>> bags;
    std::vector<int> parent;

    int node_count() const { return static_cast<int>(bags.size()); }
    int root() const;
};

enum class DecompMode { Heuristic, Exact };
enum class TieBreak { LowVertex, HighVertex };

// Min-fill elimination ordering. Ties between equal fill-in counts go to
// the lowest (or highest) vertex id, so both variants are deterministic
// and usually give two different decompositions of the same graph.
std::vector<int> min_fill_order(const StaticGraph& g, TieBreak tie = TieBreak::LowVertex);

// Optimal-width elimination ordering by DP over vertex subsets. Only for
// n <= 12; throws std::invalid_argument beyond that.
std::vector<int> exact_elimination_order(const StaticGraph& g);

// Fill-in decomposition for an elimination order: one bag per vertex
// (the vertex plus its not-yet-eliminated neighbors at elimination time)
// hanging under an empty root bag.
TreeDecomposition decomposition_from_order(const StaticGraph& g, const std::vector<int>& order);

TreeDecomposition build_tree_decomposition(const StaticGraph& g, DecompMode mode);

// max bag size - 1, and 0 for a decomposition with only empty bags.
int width(const TreeDecomposition& d);

struct DecompReport {
    bool ok = false;
    std::vector<std::string> violations;
};

// Checks vertex coverage, edge coverage and connectivity of every
// vertex's occurrence set, plus basic tree shape.
DecompReport validate_decomposition(const StaticGraph& g, const TreeDecomposition& d);

enum class NodeKind { Leaf, Introduce, Forget, Join };

std::string to_string(NodeKind kind);

struct NiceNode {
    NodeKind kind = NodeKind::Leaf;
    int vertex = 0;                // introduced/forgotten vertex, else 0
    std::vector<int> bag;          // sorted
    int parent = -1;
    std::vector<int> children;
};

struct NiceTreeDecomposition {
    std::vector<NiceNode> nodes;
    int root = -1;
};

// Rebuilds d into an equivalent nice decomposition: empty leaf bags, an
// empty root bag, introduce/forget nodes changing one vertex at a time
// (ascending vertex id), and binary join nodes with equal child bags.
// Throws std::invalid_argument if d is not tree-shaped or some vertex's
// occurrences are disconnected.
NiceTreeDecomposition to_nice(const TreeDecomposition& d);

int width(const NiceTreeDecomposition& d);

// Text form, one 'b <id> <kind> <v1,v2,...>' line per node (bag list
// omitted when empty) and one 't <parent> <child>' line per tree edge.
std::string dump_decomposition(const NiceTreeDecomposition& d);

// Reads the dump format back as a plain decomposition (kind words are
// checked but otherwise ignored; re-nicify before running a solver).
TreeDecomposition parse_decomposition(std::string_view text);

}  // namespace tempo
