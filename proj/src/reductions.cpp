#include "tempo/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "tempo/io.hpp"
#include "tempo/verify.hpp"

namespace tempo {

CnfReport validate_cnf22(const Cnf22Formula& f) {
    CnfReport rep;
    auto bad = [&](std::string msg) { rep.violations.push_back(std::move(msg)); };
    if (f.variables < 0) bad("negative variable count");
    std::vector<int> pos(std::max(f.variables, 0) + 1, 0);
    std::vector<int> neg(pos.size(), 0);
    for (std::size_t p = 0; p < f.clauses.size(); ++p) {
        std::set<int> vars;
        for (int lit : f.clauses[p]) {
            if (lit == 0) {
                bad("clause " + std::to_string(p + 1) + " contains a zero literal");
                continue;
            }
            int v = std::abs(lit);
            if (v > f.variables) {
                bad("clause " + std::to_string(p + 1) + " references variable x" +
                    std::to_string(v) + " out of range");
                continue;
            }
            vars.insert(v);
            ++(lit > 0 ? pos : neg)[v];
        }
        if (vars.size() != 3)
            bad("clause " + std::to_string(p + 1) + " must use three distinct variables");
    }
    for (int v = 1; v <= f.variables; ++v) {
        if (pos[v] != 2)
            bad("variable x" + std::to_string(v) + " occurs " + std::to_string(pos[v]) +
                " times positively, expected 2");
        if (neg[v] != 2)
            bad("variable x" + std::to_string(v) + " occurs " + std::to_string(neg[v]) +
                " times negatively, expected 2");
    }
    rep.ok = rep.violations.empty();
    return rep;
}

Cnf22Formula parse_dimacs_cnf(std::string_view text) {
    Cnf22Formula f;
    bool have_header = false;
    int declared_clauses = 0;
    std::vector<int> current;
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string raw(text.substr(pos, nl == std::string_view::npos ? nl : nl - pos));
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++number;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        std::istringstream ss(raw);
        std::string tok;
        if (!(ss >> tok)) continue;
        if (tok == "c") continue;
        if (tok == "p") {
            std::string fmt;
            if (have_header || !(ss >> fmt >> f.variables >> declared_clauses) || fmt != "cnf" ||
                f.variables < 0 || declared_clauses < 0 || (ss >> fmt))
                throw ParseError(number, "expected single 'p cnf <vars> <clauses>' header");
            have_header = true;
            continue;
        }
        if (!have_header) throw ParseError(number, "clause before 'p cnf' header");
        ss.clear();
        ss.str(raw);
        int lit;
        while (ss >> lit) {
            if (lit == 0) {
                if (current.size() != 3)
                    throw ParseError(number, "clause must have exactly three literals");
                f.clauses.push_back({current[0], current[1], current[2]});
                current.clear();
            } else {
                if (std::abs(lit) > f.variables)
                    throw ParseError(number, "literal " + std::to_string(lit) + " out of range");
                current.push_back(lit);
            }
        }
        if (!ss.eof()) throw ParseError(number, "bad token in clause");
    }
    if (!have_header) throw ParseError(1, "missing 'p cnf' header");
    if (!current.empty()) throw ParseError(number, "unterminated clause");
    if (static_cast<int>(f.clauses.size()) != declared_clauses)
        throw ParseError(1, "header declares " + std::to_string(declared_clauses) +
                                " clauses, found " + std::to_string(f.clauses.size()));
    return f;
}

std::string serialize_dimacs_cnf(const Cnf22Formula& f) {
    std::ostringstream out;
    out << "p cnf " << f.variables << ' ' << f.clauses.size() << '\n';
    for (const auto& cl : f.clauses) out << cl[0] << ' ' << cl[1] << ' ' << cl[2] << " 0\n";
    return out.str();
}

std::string serialize_marks(const GadgetInstance& inst) {
    std::ostringstream out;
    for (const auto& [edge, mark] : inst.marks)
        out << "m " << edge.u << ' ' << edge.v << ' ' << mark << '\n';
    return out.str();
}

namespace {

// builds the graph from (edge, label) pairs in any order
TemporalGraph make_temporal(int n, int tau, std::vector<std::pair<Edge, std::vector<int>>> items) {
    std::sort(items.begin(), items.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Edge> edges;
    std::vector<std::vector<int>> labels;
    for (auto& [e, lab] : items) {
        edges.push_back(e);
        labels.push_back(std::move(lab));
    }
    return TemporalGraph(StaticGraph(n, std::move(edges)), tau, std::move(labels));
}

std::vector<int> full_range(int tau) {
    std::vector<int> out(tau);
    for (int t = 0; t < tau; ++t) out[t] = t + 1;
    return out;
}

// cycle-order edges e1..e10 of the variable block for variable i
std::array<Edge, 10> cycle_edges(int i) {
    int base = 10 * (i - 1);
    std::array<Edge, 10> e;
    for (int k = 1; k <= 9; ++k) e[k - 1] = Edge(base + k, base + k + 1);
    e[9] = Edge(base + 1, base + 10);
    return e;
}

// marks along the cycle: +i, ., +i, ., ., -i, ., -i, ., .
constexpr std::array<int, 10> kCycleMark{+1, 0, +1, 0, 0, -1, 0, -1, 0, 0};
// the two perfect matchings, as positions into the cycle order
constexpr std::array<int, 5> kOddClass{0, 2, 4, 6, 8};
constexpr std::array<int, 5> kEvenClass{1, 3, 5, 7, 9};

struct SatLayout {
    int n = 0;
    int m = 0;
    std::vector<std::array<Edge, 10>> cycle;   // per variable
    std::vector<std::array<Edge, 3>> marked;   // per clause and literal position
};

SatLayout make_layout(const Cnf22Formula& f) {
    CnfReport rep = validate_cnf22(f);
    if (!rep.ok)
        throw std::invalid_argument("formula is not in 2-2 form: " + rep.violations.front());
    SatLayout L;
    L.n = f.variables;
    L.m = static_cast<int>(f.clauses.size());
    for (int i = 1; i <= L.n; ++i) L.cycle.push_back(cycle_edges(i));
    std::vector<int> pos_used(L.n + 1, 0), neg_used(L.n + 1, 0);
    for (const auto& cl : f.clauses) {
        std::array<Edge, 3> row;
        for (int q = 0; q < 3; ++q) {
            int i = std::abs(cl[q]);
            // first positive occurrence takes the first +i edge (cycle
            // position 1), the second takes position 3; negatives take
            // positions 6 and 8
            int slot = cl[q] > 0 ? (pos_used[i]++ == 0 ? 0 : 2) : (neg_used[i]++ == 0 ? 5 : 7);
            row[q] = L.cycle[i - 1][slot];
        }
        L.marked.push_back(row);
    }
    return L;
}

struct ClauseCoverIds {
    int z, w, c[3], d[3];
};

ClauseCoverIds cover_clause_ids(int n, int p) {
    ClauseCoverIds ids{};
    int base = 10 * n + 8 * p;
    ids.z = base + 1;
    ids.w = base + 2;
    for (int q = 0; q < 3; ++q) {
        ids.c[q] = base + 3 + q;
        ids.d[q] = base + 6 + q;
    }
    return ids;
}

void check_assignment(const Cnf22Formula& f, const Assignment& a) {
    if (a.size() != static_cast<std::size_t>(f.variables) + 1)
        throw std::invalid_argument("assignment must have size variables + 1");
    for (std::size_t p = 0; p < f.clauses.size(); ++p) {
        bool sat = false;
        for (int lit : f.clauses[p]) sat = sat || ((lit > 0) == a[std::abs(lit)]);
        if (!sat)
            throw std::invalid_argument("assignment does not satisfy clause " +
                                        std::to_string(p + 1));
    }
}

void validate_reduction_input(const SetSystem& sys, bool need_universe) {
    for (std::size_t i = 0; i < sys.universe.size(); ++i)
        if (sys.universe[i] != static_cast<int>(i) + 1)
            throw std::invalid_argument("universe must be contiguous 1..n");
    if (need_universe && sys.universe.empty())
        throw std::invalid_argument("universe must be non-empty");
    std::set<int> reachable;
    for (std::size_t i = 0; i < sys.sets.size(); ++i) {
        if (sys.sets[i].empty())
            throw std::invalid_argument("set " + std::to_string(i + 1) + " is empty");
        for (int x : sys.sets[i]) {
            if (x < 1 || x > static_cast<int>(sys.universe.size()))
                throw std::invalid_argument("set " + std::to_string(i + 1) +
                                            " leaves the universe");
            reachable.insert(x);
        }
    }
    if (need_universe && reachable.size() != sys.universe.size())
        throw std::invalid_argument("universe is not covered by the sets");
}

}  // namespace

GadgetInstance build_variable_cycle(int index) {
    if (index < 1) throw std::invalid_argument("variable index must be positive");
    GadgetInstance inst;
    std::vector<std::pair<Edge, std::vector<int>>> items;
    auto edges = cycle_edges(1);
    for (int k = 0; k < 10; ++k) {
        items.emplace_back(edges[k], std::vector<int>{1});
        if (kCycleMark[k]) inst.marks[edges[k]] = kCycleMark[k] * index;
    }
    inst.graph = make_temporal(10, 1, std::move(items));
    inst.threshold = 5;
    inst.kind = "variable-cycle";
    return inst;
}

GadgetInstance build_clause_gadget_cover(int j, int k, int l) {
    GadgetInstance inst;
    std::vector<std::pair<Edge, std::vector<int>>> items;
    const int z = 1, w = 2;
    std::array<int, 3> mark{j, k, l};
    for (int q = 0; q < 3; ++q) {
        int a = 3 + 4 * q, b = 4 + 4 * q, c = 5 + 4 * q, d = 6 + 4 * q;
        items.emplace_back(Edge(a, b), std::vector<int>{1});
        inst.marks[Edge(a, b)] = mark[q];
        for (Edge e : {Edge(z, a), Edge(z, c), Edge(a, c), Edge(w, b), Edge(w, d), Edge(b, d)})
            items.emplace_back(e, std::vector<int>{1});
    }
    inst.graph = make_temporal(14, 1, std::move(items));
    inst.threshold = 7;  // one marked edge plus its six-edge completion
    inst.kind = "clause-cover";
    return inst;
}

GadgetInstance build_clause_gadget_matching(int j, int k, int l) {
    GadgetInstance inst;
    std::vector<std::pair<Edge, std::vector<int>>> items;
    const int z = 1;
    std::array<int, 3> mark{j, k, l};
    for (int q = 0; q < 3; ++q) {
        int a = 2 + 2 * q, b = 3 + 2 * q;
        items.emplace_back(Edge(a, b), std::vector<int>{1});
        inst.marks[Edge(a, b)] = mark[q];
        items.emplace_back(Edge(z, a), std::vector<int>{1});
    }
    inst.graph = make_temporal(7, 1, std::move(items));
    inst.threshold = 3;  // the three marked edges form a maximum matching
    inst.kind = "clause-matching";
    return inst;
}

GadgetInstance reduce_sat_to_cover(const Cnf22Formula& f) {
    SatLayout L = make_layout(f);
    GadgetInstance inst;
    std::vector<std::pair<Edge, std::vector<int>>> items;
    for (int i = 1; i <= L.n; ++i)
        for (int k = 0; k < 10; ++k) {
            const Edge& e = L.cycle[i - 1][k];
            if (kCycleMark[k]) {
                items.emplace_back(e, std::vector<int>{1, 2});
                inst.marks[e] = kCycleMark[k] * i;
            } else {
                items.emplace_back(e, std::vector<int>{1});
            }
        }
    for (int p = 0; p < L.m; ++p) {
        ClauseCoverIds ids = cover_clause_ids(L.n, p);
        for (int q = 0; q < 3; ++q) {
            int a = L.marked[p][q].u, b = L.marked[p][q].v;
            for (Edge e : {Edge(ids.z, a), Edge(ids.z, ids.c[q]), Edge(a, ids.c[q]),
                           Edge(ids.w, b), Edge(ids.w, ids.d[q]), Edge(b, ids.d[q])})
                items.emplace_back(e, std::vector<int>{2});
        }
    }
    inst.graph = make_temporal(10 * L.n + 8 * L.m, 2, std::move(items));
    inst.threshold = 5 * L.n + 6 * L.m;
    inst.kind = "sat-cover";
    return inst;
}

GadgetInstance reduce_sat_to_matching(const Cnf22Formula& f) {
    SatLayout L = make_layout(f);
    GadgetInstance inst;
    std::vector<std::pair<Edge, std::vector<int>>> items;
    for (int i = 1; i <= L.n; ++i)
        for (int k = 0; k < 10; ++k) {
            const Edge& e = L.cycle[i - 1][k];
            if (kCycleMark[k]) {
                items.emplace_back(e, std::vector<int>{1, 2});
                inst.marks[e] = kCycleMark[k] * i;
            } else {
                items.emplace_back(e, std::vector<int>{1});
            }
        }
    for (int p = 0; p < L.m; ++p) {
        int z = 10 * L.n + p + 1;
        for (int q = 0; q < 3; ++q)
            items.emplace_back(Edge(z, L.marked[p][q].u), std::vector<int>{2});
    }
    inst.graph = make_temporal(10 * L.n + L.m, 2, std::move(items));
    inst.threshold = 5 * L.n + L.m;
    inst.kind = "sat-matching";
    return inst;
}

SolutionSet assignment_to_cover(const Cnf22Formula& f, const Assignment& a) {
    SatLayout L = make_layout(f);
    check_assignment(f, a);
    std::vector<Edge> edges;
    for (int i = 1; i <= L.n; ++i)
        for (int k : a[i] ? kOddClass : kEvenClass) edges.push_back(L.cycle[i - 1][k]);
    for (int p = 0; p < L.m; ++p) {
        ClauseCoverIds ids = cover_clause_ids(L.n, p);
        int q0 = -1;
        for (int q = 0; q < 3 && q0 < 0; ++q) {
            int lit = f.clauses[p][q];
            if ((lit > 0) == a[std::abs(lit)]) q0 = q;
        }
        for (int q = 0; q < 3; ++q) {
            if (q == q0) {
                edges.emplace_back(ids.z, ids.c[q]);
                edges.emplace_back(ids.w, ids.d[q]);
            } else {
                edges.emplace_back(L.marked[p][q].u, ids.c[q]);
                edges.emplace_back(L.marked[p][q].v, ids.d[q]);
            }
        }
    }
    return make_solution(SolutionKind::Cover, std::move(edges));
}

SolutionSet assignment_to_matching(const Cnf22Formula& f, const Assignment& a) {
    SatLayout L = make_layout(f);
    check_assignment(f, a);
    std::vector<Edge> edges;
    // inverted on purpose: a true variable keeps its -i edges free, so the
    // matching inside its cycle is the even class
    for (int i = 1; i <= L.n; ++i)
        for (int k : a[i] ? kEvenClass : kOddClass) edges.push_back(L.cycle[i - 1][k]);
    for (int p = 0; p < L.m; ++p) {
        int z = 10 * L.n + p + 1;
        int q0 = -1;
        for (int q = 0; q < 3 && q0 < 0; ++q) {
            int lit = f.clauses[p][q];
            if ((lit > 0) == a[std::abs(lit)]) q0 = q;
        }
        edges.emplace_back(z, L.marked[p][q0].u);
    }
    return make_solution(SolutionKind::Matching, std::move(edges));
}

GadgetInstance reduce_setcover_to_tree_cover(const SetSystem& sys, int k) {
    validate_reduction_input(sys, true);
    if (k < 0) throw std::invalid_argument("target size must be non-negative");
    int m = static_cast<int>(sys.sets.size());
    int tau = static_cast<int>(sys.universe.size());
    GadgetInstance inst;
    std::vector<std::pair<Edge, std::vector<int>>> items;
    for (int i = 1; i <= m; ++i) {
        items.emplace_back(Edge(1, 1 + i), sys.sets[i - 1]);
        items.emplace_back(Edge(1 + i, 1 + m + i), full_range(tau));
    }
    inst.graph = make_temporal(1 + 2 * m, tau, std::move(items));
    inst.threshold = k + m;
    inst.kind = "setcover-tree";
    return inst;
}

GadgetInstance reduce_setpacking_to_star_matching(const SetSystem& sys, int k) {
    validate_reduction_input(sys, false);
    if (k < 0) throw std::invalid_argument("target size must be non-negative");
    int m = static_cast<int>(sys.sets.size());
    int tau = std::max<int>(1, static_cast<int>(sys.universe.size()));
    GadgetInstance inst;
    std::vector<std::pair<Edge, std::vector<int>>> items;
    for (int i = 1; i <= m; ++i) items.emplace_back(Edge(1, 1 + i), sys.sets[i - 1]);
    inst.graph = make_temporal(1 + m, tau, std::move(items));
    inst.threshold = k;
    inst.kind = "setpacking-star";
    return inst;
}

GadgetInstance reduce_setcover_inapprox(const SetSystem& sys, int k) {
    validate_reduction_input(sys, true);
    if (k < 0) throw std::invalid_argument("target size must be non-negative");
    int m = static_cast<int>(sys.sets.size());
    if (m < 1) throw std::invalid_argument("need at least one set");
    int tau = static_cast<int>(sys.universe.size());
    int roots = m * m;
    GadgetInstance inst;
    std::vector<std::pair<Edge, std::vector<int>>> items;
    for (int j = 1; j <= m; ++j) {
        items.emplace_back(Edge(roots + j, roots + m + j), full_range(tau));
        for (int i = 1; i <= roots; ++i)
            items.emplace_back(Edge(i, roots + j), sys.sets[j - 1]);
    }
    inst.graph = make_temporal(roots + 2 * m, tau, std::move(items));
    inst.threshold = m + k * roots;
    inst.kind = "inapprox";
    return inst;
}

std::vector<int> cover_to_setcover(const GadgetInstance& inst, const SolutionSet& cover) {
    if (inst.kind != "inapprox")
        throw std::invalid_argument("expected an inapprox instance, got '" + inst.kind + "'");
    if (!verify_edge_cover(inst.graph, cover).ok)
        throw std::invalid_argument("solution is not an edge cover of the instance");
    int V = inst.graph.vertex_count();
    int m = static_cast<int>(std::llround(std::sqrt(static_cast<double>(V) + 1.0))) - 1;
    if (m < 1 || m * m + 2 * m != V)
        throw std::invalid_argument("instance does not have inapprox shape");
    int roots = m * m;
    // per root copy, the sets whose edge it picked; all copies cover the
    // root at every time, so the lightest one is a set cover
    int best = -1;
    std::vector<int> best_sets;
    for (int i = 1; i <= roots; ++i) {
        std::vector<int> used;
        for (int j = 1; j <= m; ++j)
            if (std::binary_search(cover.edges.begin(), cover.edges.end(), Edge(i, roots + j)))
                used.push_back(j - 1);
        if (best < 0 || static_cast<int>(used.size()) < static_cast<int>(best_sets.size())) {
            best = i;
            best_sets = std::move(used);
        }
    }
    return best_sets;
}

TemporalGraph augment_labels(const TemporalGraph& g) {
    std::vector<std::vector<int>> labels;
    for (int i = 0; i < g.edge_count(); ++i) {
        labels.push_back(g.label(i));
        labels.back().push_back(g.tau() + 1);
    }
    return TemporalGraph(g.base(), g.tau() + 1, std::move(labels));
}

TemporalGraph random_temporal_graph(int n, double p, int tau, double q, std::uint64_t seed) {
    if (n < 0 || p < 0.0 || p > 1.0 || tau < 1 || q <= 0.0 || q > 1.0)
        throw std::invalid_argument("bad generator parameters");
    std::mt19937_64 rng(seed);
    // top 53 bits -> [0,1); avoids distribution objects so equal seeds
    // give equal instances on every standard library
    auto coin = [&rng](double prob) {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53 < prob;
    };
    std::vector<std::pair<Edge, std::vector<int>>> items;
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v) {
            if (!coin(p)) continue;
            std::vector<int> lab;
            while (lab.empty())
                for (int t = 1; t <= tau; ++t)
                    if (coin(q)) lab.push_back(t);
            items.emplace_back(Edge(u, v), std::move(lab));
        }
    return make_temporal(n, tau, std::move(items));
}

}  // namespace tempo
