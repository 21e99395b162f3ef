#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "tempo/graph.hpp"
#include "tempo/setcover.hpp"

namespace tempo {

// Formula in which every variable occurs exactly twice positively and
// twice negatively, every clause on three distinct variables.
struct Cnf22Formula {
    int variables = 0;
    std::vector<std::array<int, 3>> clauses;  // signed, non-zero literals
};

struct CnfReport {
    bool ok = false;
    std::vector<std::string> violations;
};

CnfReport validate_cnf22(const Cnf22Formula& f);

// DIMACS text: 'c' comments, 'p cnf <n> <m>' header, 0-terminated
// clauses (exactly three literals each here).
Cnf22Formula parse_dimacs_cnf(std::string_view text);
std::string serialize_dimacs_cnf(const Cnf22Formula& f);

// assignment[i] is the value of variable i; index 0 is unused. Size must
// be variables + 1.
using Assignment = std::vector<bool>;

// A generated instance plus the non-zero edge marks (+i / -i for the
// edges tied to variable i), the decision threshold, and the generator
// name.
struct GadgetInstance {
    TemporalGraph graph;
    std::map<Edge, int> marks;
    int threshold = 0;
    std::string kind;
};

// Sidecar text: one 'm <u> <v> <mark>' line per marked edge.
std::string serialize_marks(const GadgetInstance& inst);

// Ten-cycle on vertices 1..10 whose edges, in cycle order, carry marks
// +index, 0, +index, 0, 0, -index, 0, -index, 0, 0. Its only two 5-edge
// covers are its two perfect matchings; the odd one holds both +index
// edges, the even one both -index edges. tau = 1.
GadgetInstance build_variable_cycle(int index);

// Standalone clause block used by the cover reduction: top vertex z,
// bottom vertex w, and per literal mark q in {j,k,l} a path gadget with
// marked edge a_q b_q and unmarked z a_q, z c_q, a_q c_q, w b_q, w d_q,
// b_q d_q. 14 vertices, 21 edges, tau = 1.
GadgetInstance build_clause_gadget_cover(int j, int k, int l);

// Standalone clause block used by the matching reduction: top vertex z,
// marked edges a_q b_q, unmarked z a_q. 7 vertices, 6 edges, tau = 1.
GadgetInstance build_clause_gadget_matching(int j, int k, int l);

// Lifetime-2 instance with one variable cycle per variable and one cover
// clause block per clause; marked edges live at {1,2}, cycle filler at
// {1}, clause filler at {2}. Satisfiable iff a cover of size
// 5*variables + 6*clauses exists (that is the threshold).
GadgetInstance reduce_sat_to_cover(const Cnf22Formula& f);

// Lifetime-2 instance with the variable cycles and one extra vertex per
// clause, joined to one marked-edge endpoint per literal. Satisfiable
// iff a matching of size 5*variables + clauses exists (the threshold).
GadgetInstance reduce_sat_to_matching(const Cnf22Formula& f);

// Witness constructions for a satisfying assignment; both throw
// std::invalid_argument if the assignment does not satisfy the formula.
// The cover has size exactly 5*variables + 6*clauses, the matching
// exactly 5*variables + clauses.
SolutionSet assignment_to_cover(const Cnf22Formula& f, const Assignment& a);
SolutionSet assignment_to_matching(const Cnf22Formula& f, const Assignment& a);

// Spider: root r joined to x_i at the times of set i, leaf edge x_i y_i
// active at all times; lifetime = universe size. The leaves are forced, so
// SetCover has a size-k cover iff the instance has an edge cover of size
// k + |sets|.
GadgetInstance reduce_setcover_to_tree_cover(const SetSystem& sys, int k);

// Star: edge r x_i active at the times of set i. SetPacking has k
// pairwise disjoint sets iff the instance has a matching of size k.
GadgetInstance reduce_setpacking_to_star_matching(const SetSystem& sys, int k);

// Gap-amplified spider with |sets|^2 root copies all joined to every
// x_j; threshold |sets| + k*|sets|^2.
GadgetInstance reduce_setcover_inapprox(const SetSystem& sys, int k);

// Reads a SetCover solution back out of a cover of an inapprox instance:
// the 0-based set indices used by the root copy of minimum degree in the
// cover. Throws if inst is not an inapprox instance or cover is not a
// valid edge cover of it.
std::vector<int> cover_to_setcover(const GadgetInstance& inst, const SolutionSet& cover);

// Same graph with time tau+1 added to every label and the lifetime
// extended to tau+1. Leaves the set of minimum edge covers unchanged.
TemporalGraph augment_labels(const TemporalGraph& g);

// Seeded G(n,p)-style instance: each pair becomes an edge with
// probability p, each time is put into a label with probability q,
// empty labels are redrawn. Identical seeds give identical instances.
TemporalGraph random_temporal_graph(int n, double p, int tau, double q, std::uint64_t seed);

}  // namespace tempo
