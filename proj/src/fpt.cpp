#include "tempo/fpt.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>

namespace tempo {

namespace {

constexpr int kMaxBagEdges = 22;
constexpr int kMaxBagTvs = 62;
constexpr int kInfeasible = -1;

// position map between two sorted vectors: out[i] = index of a[i] in b,
// or -1 when absent
template <typename T>
std::vector<int> position_map(const std::vector<T>& a, const std::vector<T>& b) {
    std::vector<int> out(a.size(), -1);
    std::size_t j = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        while (j < b.size() && b[j] < a[i]) ++j;
        if (j < b.size() && b[j] == a[i]) out[i] = static_cast<int>(j);
    }
    return out;
}

std::uint32_t translate32(std::uint32_t mask, const std::vector<int>& map) {
    std::uint32_t out = 0;
    while (mask) {
        int b = __builtin_ctz(mask);
        mask &= mask - 1;
        if (map[b] < 0) throw std::logic_error("edge mask not representable in child context");
        out |= 1u << map[b];
    }
    return out;
}

std::uint64_t translate64(std::uint64_t mask, const std::vector<int>& map) {
    std::uint64_t out = 0;
    while (mask) {
        int b = __builtin_ctzll(mask);
        mask &= mask - 1;
        if (map[b] < 0) throw std::logic_error("tv mask not representable in child context");
        out |= 1ULL << map[b];
    }
    return out;
}

void validate_nice(const TemporalGraph& g, const NiceTreeDecomposition& nd) {
    auto fail = [](const std::string& msg) {
        throw std::invalid_argument("invalid nice decomposition: " + msg);
    };
    int k = static_cast<int>(nd.nodes.size());
    if (k == 0 || nd.root < 0 || nd.root >= k) fail("missing root");
    if (nd.nodes[nd.root].parent != -1 || !nd.nodes[nd.root].bag.empty())
        fail("root must be parentless with an empty bag");
    std::vector<int> forgets(g.vertex_count() + 1, 0);
    std::vector<int> seen_in_bag(g.vertex_count() + 1, 0);
    for (int i = 0; i < k; ++i) {
        const NiceNode& node = nd.nodes[i];
        if (!std::is_sorted(node.bag.begin(), node.bag.end())) fail("bag not sorted");
        for (int v : node.bag) {
            if (v < 1 || v > g.vertex_count()) fail("bag vertex out of range");
            seen_in_bag[v] = 1;
        }
        for (int c : node.children) {
            if (c < 0 || c >= k || c == i) fail("bad child link");
            if (nd.nodes[c].parent != i) fail("child/parent links disagree");
        }
        if (node.parent != -1) {
            if (node.parent < 0 || node.parent >= k) fail("bad parent link");
            const auto& pc = nd.nodes[node.parent].children;
            if (std::find(pc.begin(), pc.end(), i) == pc.end())
                fail("child/parent links disagree");
        } else if (i != nd.root) {
            fail("two roots");
        }
        switch (node.kind) {
            case NodeKind::Leaf:
                if (!node.children.empty() || !node.bag.empty())
                    fail("leaf must be childless with an empty bag");
                break;
            case NodeKind::Introduce: {
                if (node.children.size() != 1) fail("introduce needs one child");
                const auto& cb = nd.nodes[node.children[0]].bag;
                std::vector<int> expect = cb;
                expect.insert(std::lower_bound(expect.begin(), expect.end(), node.vertex),
                              node.vertex);
                if (std::binary_search(cb.begin(), cb.end(), node.vertex) || expect != node.bag)
                    fail("introduce bag must be child bag plus a new vertex");
                break;
            }
            case NodeKind::Forget: {
                if (node.children.size() != 1) fail("forget needs one child");
                const auto& cb = nd.nodes[node.children[0]].bag;
                std::vector<int> expect = cb;
                auto it = std::find(expect.begin(), expect.end(), node.vertex);
                if (it == expect.end()) fail("forgotten vertex missing from child bag");
                expect.erase(it);
                if (expect != node.bag) fail("forget bag must be child bag minus one vertex");
                if (node.vertex >= 1 && node.vertex <= g.vertex_count()) ++forgets[node.vertex];
                break;
            }
            case NodeKind::Join:
                if (node.children.size() != 2) fail("join needs two children");
                if (nd.nodes[node.children[0]].bag != node.bag ||
                    nd.nodes[node.children[1]].bag != node.bag)
                    fail("join bags must match both children");
                break;
        }
    }
    for (int v = 1; v <= g.vertex_count(); ++v) {
        if (!seen_in_bag[v]) fail("vertex " + std::to_string(v) + " appears in no bag");
        if (forgets[v] != 1)
            fail("vertex " + std::to_string(v) + " must be forgotten exactly once");
    }
    for (const Edge& e : g.base().edges()) {
        bool found = false;
        for (int i = 0; i < k && !found; ++i) {
            const auto& bag = nd.nodes[i].bag;
            found = std::binary_search(bag.begin(), bag.end(), e.u) &&
                    std::binary_search(bag.begin(), bag.end(), e.v);
        }
        if (!found)
            fail("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") is in no bag");
    }
}

// iterates sub over all submasks of set, including set itself and 0
#define FOR_SUBMASKS(sub, set) \
    for (std::uint64_t sub = (set), done_ = 0; !done_; done_ = (sub == 0), sub = (sub - 1) & (set))

}  // namespace

int BagContext::bag_index(int v) const {
    auto it = std::lower_bound(bag.begin(), bag.end(), v);
    if (it == bag.end() || *it != v) return -1;
    return static_cast<int>(it - bag.begin());
}

std::size_t DPStats::total_entries() const {
    std::size_t total = 0;
    for (const auto& s : per_node) total += s.entries;
    return total;
}

TemporalDP::TemporalDP(const TemporalGraph& g, const NiceTreeDecomposition& nd, SolutionKind kind)
    : g_(g), nd_(nd), kind_(kind) {
    validate_nice(g, nd);
    int n = g.vertex_count();
    std::vector<std::vector<char>> coverable(n + 1, std::vector<char>(g.tau() + 1, 0));
    for (int i = 0; i < g.edge_count(); ++i) {
        const Edge& e = g.base().edge(i);
        for (int t : g.label(i)) coverable[e.u][t] = coverable[e.v][t] = 1;
    }

    int k = static_cast<int>(nd.nodes.size());
    ctx_.resize(k);
    for (int i = 0; i < k; ++i) {
        BagContext& c = ctx_[i];
        c.bag = nd.nodes[i].bag;
        for (int ei = 0; ei < g.edge_count(); ++ei) {
            const Edge& e = g.base().edge(ei);
            if (c.bag_index(e.u) >= 0 && c.bag_index(e.v) >= 0) {
                c.edges.push_back(e);
                c.edge_ids.push_back(ei);
            }
        }
        for (int v : c.bag)
            for (int t = 1; t <= g.tau(); ++t)
                if (coverable[v][t]) c.tvs.emplace_back(v, t);
        if (c.edge_count() > kMaxBagEdges)
            throw std::runtime_error("bag with " + std::to_string(c.edge_count()) +
                                     " internal edges exceeds the DP capacity of " +
                                     std::to_string(kMaxBagEdges));
        if (c.tv_count() > kMaxBagTvs)
            throw std::runtime_error("bag with " + std::to_string(c.tv_count()) +
                                     " temporal vertices exceeds the DP capacity of " +
                                     std::to_string(kMaxBagTvs));
        auto tv_bit = [&](int v, int t) {
            auto it = std::lower_bound(c.tvs.begin(), c.tvs.end(), TemporalVertex(v, t));
            return static_cast<int>(it - c.tvs.begin());
        };
        c.edge_tvs.assign(c.edges.size(), 0);
        for (std::size_t j = 0; j < c.edges.size(); ++j)
            for (int t : g_.label(c.edge_ids[j])) {
                c.edge_tvs[j] |= 1ULL << tv_bit(c.edges[j].u, t);
                c.edge_tvs[j] |= 1ULL << tv_bit(c.edges[j].v, t);
            }
        c.vertex_edges.assign(c.bag.size(), 0);
        c.vertex_tvs.assign(c.bag.size(), 0);
        for (std::size_t p = 0; p < c.bag.size(); ++p) {
            for (std::size_t j = 0; j < c.edges.size(); ++j)
                if (c.edges[j].contains(c.bag[p])) c.vertex_edges[p] |= 1u << j;
            for (std::size_t q = 0; q < c.tvs.size(); ++q)
                if (c.tvs[q].v == c.bag[p]) c.vertex_tvs[p] |= 1ULL << q;
        }
        for (std::size_t q = 0; q < c.tvs.size(); ++q) c.all_tvs |= 1ULL << q;
    }

    tables_.resize(k);
    // children always before parents: explicit post-order from the root
    std::vector<int> order;
    std::vector<std::pair<int, int>> stack{{nd.root, 0}};
    while (!stack.empty()) {
        auto& [node, next] = stack.back();
        const auto& kids = nd.nodes[node].children;
        if (next < static_cast<int>(kids.size())) {
            stack.emplace_back(kids[next++], 0);
            continue;
        }
        order.push_back(node);
        stack.pop_back();
    }
    for (int node : order) compute_node(node);
}

void TemporalDP::compute_node(int node) {
    const NiceNode& nn = nd_.nodes[node];
    const BagContext& P = ctx_[node];
    DPTable& out = tables_[node];
    const bool cover = kind_ == SolutionKind::Cover;

    if (nn.kind == NodeKind::Leaf) {
        out[DPKey{0, 0}] = DPEntry{0, {}, {}};
        return;
    }

    int E = P.edge_count();
    // per-subset endpoint appearances, and (matching only) per-subset
    // pairwise compatibility
    std::vector<std::uint64_t> stvs(std::size_t(1) << E, 0);
    std::vector<char> valid(cover ? 1 : (std::size_t(1) << E), 1);
    std::vector<std::uint32_t> conflicts;
    if (!cover) {
        conflicts.assign(E, 0);
        for (int i = 0; i < E; ++i)
            for (int j = i + 1; j < E; ++j) {
                const Edge& a = P.edges[i];
                const Edge& b = P.edges[j];
                if (!a.contains(b.u) && !a.contains(b.v)) continue;
                // shared endpoint: incompatible iff active at a common time
                if (P.edge_tvs[i] & P.edge_tvs[j]) {
                    conflicts[i] |= 1u << j;
                    conflicts[j] |= 1u << i;
                }
            }
    }
    for (std::uint32_t S = 1; S < (1u << E); ++S) {
        int low = __builtin_ctz(S);
        std::uint32_t rest = S & (S - 1);
        stvs[S] = stvs[rest] | P.edge_tvs[low];
        if (!cover) valid[S] = valid[rest] && !(conflicts[low] & rest);
    }

    auto better = [&](int candidate, int incumbent) {
        if (incumbent == kInfeasible) return true;
        return cover ? candidate < incumbent : candidate > incumbent;
    };

    if (nn.kind == NodeKind::Introduce) {
        int child = nn.children[0];
        const BagContext& C = ctx_[child];
        const DPTable& ct = tables_[child];
        int vpos = P.bag_index(nn.vertex);
        std::uint32_t vedges = P.vertex_edges[vpos];
        std::uint64_t vtvs = P.vertex_tvs[vpos];
        auto emap = position_map(P.edges, C.edges);
        auto tmap = position_map(P.tvs, C.tvs);

        for (std::uint32_t S = 0; S < (1u << E); ++S) {
            if (!cover && !valid[S]) continue;
            std::uint32_t Sv = S & vedges;
            std::uint64_t tv_sv = 0;
            {
                std::uint32_t rest = Sv;
                while (rest) {
                    tv_sv |= P.edge_tvs[__builtin_ctz(rest)];
                    rest &= rest - 1;
                }
            }
            std::uint32_t s_child = translate32(S & ~vedges, emap);
            int added = __builtin_popcount(Sv);
            // appearances of the introduced vertex in C are pinned to the
            // chosen incident edges, so the free part avoids vtvs
            std::uint64_t free = P.all_tvs & ~stvs[S] & ~vtvs;
            FOR_SUBMASKS(F, free) {
                std::uint64_t Cmask = stvs[S] | F;
                DPKey key{S, Cmask};
                if (cover) {
                    // other-endpoint appearances of the dropped edges may be
                    // charged to the child or not, except those the child's
                    // own edge choice already pins
                    std::uint64_t base_c = (Cmask & ~vtvs) & ~tv_sv;
                    std::uint64_t dset = (tv_sv & ~vtvs) & ~stvs[S & ~vedges];
                    std::uint64_t keep = (Cmask & ~vtvs) & stvs[S & ~vedges];
                    int best = kInfeasible;
                    DPKey best_child;
                    FOR_SUBMASKS(D, dset) {
                        DPKey ck{s_child, translate64(base_c | keep | (dset & ~D), tmap)};
                        auto it = ct.find(ck);
                        if (it != ct.end() && better(it->second.value, best)) {
                            best = it->second.value;
                            best_child = ck;
                        }
                    }
                    if (best != kInfeasible) out[key] = DPEntry{added + best, best_child, {}};
                } else {
                    DPKey ck{s_child, translate64(Cmask & ~tv_sv, tmap)};
                    auto it = ct.find(ck);
                    if (it != ct.end()) out[key] = DPEntry{it->second.value + added, ck, {}};
                }
            }
        }
        return;
    }

    if (nn.kind == NodeKind::Forget) {
        int child = nn.children[0];
        const BagContext& C = ctx_[child];
        const DPTable& ct = tables_[child];
        int vpos = C.bag_index(nn.vertex);
        std::uint32_t cvedges = C.vertex_edges[vpos];
        std::uint64_t cvtvs = C.vertex_tvs[vpos];
        auto emap = position_map(P.edges, C.edges);
        auto tmap = position_map(P.tvs, C.tvs);

        for (std::uint32_t S = 0; S < (1u << E); ++S) {
            if (!cover && !valid[S]) continue;
            std::uint32_t s_child = translate32(S, emap);
            std::uint64_t free = P.all_tvs & ~stvs[S];
            FOR_SUBMASKS(F, free) {
                std::uint64_t Cmask = stvs[S] | F;
                std::uint64_t c_child = translate64(Cmask, tmap);
                int best = kInfeasible;
                DPKey best_child;
                FOR_SUBMASKS(Sh, cvedges) {
                    std::uint32_t cand = s_child | static_cast<std::uint32_t>(Sh);
                    if (cover) {
                        // the forgotten vertex's appearances all count as
                        // demanded from the child onward
                        DPKey ck{cand, c_child | cvtvs};
                        auto it = ct.find(ck);
                        if (it != ct.end() && better(it->second.value, best)) {
                            best = it->second.value;
                            best_child = ck;
                        }
                    } else {
                        std::uint64_t tv_sh = 0;
                        std::uint64_t rest = Sh;
                        while (rest) {
                            tv_sh |= C.edge_tvs[__builtin_ctzll(rest)];
                            rest &= rest - 1;
                        }
                        // saturation of the forgotten vertex below here is
                        // unconstrained beyond what Sh forces
                        std::uint64_t forced = tv_sh & cvtvs;
                        FOR_SUBMASKS(Fh, cvtvs & ~forced) {
                            DPKey ck{cand, c_child | forced | Fh};
                            auto it = ct.find(ck);
                            if (it != ct.end() && better(it->second.value, best)) {
                                best = it->second.value;
                                best_child = ck;
                            }
                        }
                    }
                }
                if (best != kInfeasible) out[DPKey{S, Cmask}] = DPEntry{best, best_child, {}};
            }
        }
        return;
    }

    // join
    int c1 = nn.children[0];
    int c2 = nn.children[1];
    const DPTable& t1 = tables_[c1];
    const DPTable& t2 = tables_[c2];
    if (ctx_[c1].bag != P.bag || ctx_[c2].bag != P.bag)
        throw std::logic_error("join children must share the bag");

    for (std::uint32_t S = 0; S < (1u << E); ++S) {
        if (!cover && !valid[S]) continue;
        int scount = __builtin_popcount(S);
        std::uint64_t M = stvs[S];
        std::uint64_t free = P.all_tvs & ~M;
        FOR_SUBMASKS(F, free) {
            std::uint64_t Cmask = M | F;
            std::uint64_t opts = Cmask & ~M;
            int best = kInfeasible;
            DPKey bk1, bk2;
            FOR_SUBMASKS(A, opts) {
                DPKey k1{S, M | A};
                auto it1 = t1.find(k1);
                if (it1 == t1.end()) continue;
                if (cover) {
                    // left side covers M|A; right side must pick up the rest
                    // and may re-cover any part of A
                    std::uint64_t need = M | (opts & ~A);
                    FOR_SUBMASKS(B, A) {
                        DPKey k2{S, need | B};
                        auto it2 = t2.find(k2);
                        if (it2 == t2.end()) continue;
                        int cand = it1->second.value + it2->second.value - scount;
                        if (better(cand, best)) {
                            best = cand;
                            bk1 = k1;
                            bk2 = k2;
                        }
                    }
                } else {
                    // matched appearances split exactly: both sides saturate
                    // M via S, the rest goes to one side only
                    DPKey k2{S, M | (opts & ~A)};
                    auto it2 = t2.find(k2);
                    if (it2 == t2.end()) continue;
                    int cand = it1->second.value + it2->second.value - scount;
                    if (better(cand, best)) {
                        best = cand;
                        bk1 = k1;
                        bk2 = k2;
                    }
                }
            }
            if (best != kInfeasible) out[DPKey{S, Cmask}] = DPEntry{best, bk1, bk2};
        }
    }
}

int TemporalDP::optimal_value() const {
    const DPTable& root = tables_[nd_.root];
    auto it = root.find(DPKey{0, 0});
    if (it == root.end()) throw std::logic_error("root table has no feasible state");
    return it->second.value;
}

void TemporalDP::collect(int node, const DPKey& key, std::vector<Edge>& out) const {
    const NiceNode& nn = nd_.nodes[node];
    auto it = tables_[node].find(key);
    if (it == tables_[node].end()) throw std::logic_error("extraction hit a missing state");
    switch (nn.kind) {
        case NodeKind::Leaf:
            return;
        case NodeKind::Introduce: {
            const BagContext& P = ctx_[node];
            std::uint32_t chosen = key.edges & P.vertex_edges[P.bag_index(nn.vertex)];
            while (chosen) {
                int b = __builtin_ctz(chosen);
                chosen &= chosen - 1;
                out.push_back(P.edges[b]);
            }
            collect(nn.children[0], it->second.child0, out);
            return;
        }
        case NodeKind::Forget:
            collect(nn.children[0], it->second.child0, out);
            return;
        case NodeKind::Join:
            collect(nn.children[0], it->second.child0, out);
            collect(nn.children[1], it->second.child1, out);
            return;
    }
}

SolutionSet TemporalDP::extract_solution() const {
    std::vector<Edge> edges;
    collect(nd_.root, DPKey{0, 0}, edges);
    return make_solution(kind_, std::move(edges));
}

DPStats TemporalDP::stats() const {
    DPStats stats;
    for (int i = 0; i < node_count(); ++i) {
        NodeStat s;
        s.node = i;
        s.entries = tables_[i].size();
        s.bag_size = static_cast<int>(ctx_[i].bag.size());
        s.bag_edges = ctx_[i].edge_count();
        s.bag_tvs = ctx_[i].tv_count();
        stats.per_node.push_back(s);
    }
    return stats;
}

namespace {

std::string bit_string(std::uint64_t mask, int width) {
    if (width == 0) return "-";
    std::string out(width, '0');
    for (int i = 0; i < width; ++i)
        if (mask >> i & 1ULL) out[i] = '1';
    return out;
}

}  // namespace

std::string TemporalDP::dump_tables() const {
    std::ostringstream out;
    for (int i = 0; i < node_count(); ++i) {
        std::vector<DPKey> keys;
        for (const auto& [key, entry] : tables_[i]) keys.push_back(key);
        std::sort(keys.begin(), keys.end());
        for (const DPKey& key : keys)
            out << i << ' ' << bit_string(key.edges, ctx_[i].edge_count()) << ' '
                << bit_string(key.tvs, ctx_[i].tv_count()) << ' '
                << tables_[i].at(key).value << '\n';
    }
    return out.str();
}

namespace {

FptResult run_dp(const TemporalGraph& g, const NiceTreeDecomposition& nd, SolutionKind kind) {
    TemporalDP dp(g, nd, kind);
    FptResult res;
    res.size = dp.optimal_value();
    res.solution = dp.extract_solution();
    res.stats = dp.stats();
    res.width = width(nd);
    return res;
}

}  // namespace

FptResult fpt_min_edge_cover(const TemporalGraph& g, const NiceTreeDecomposition& nd) {
    return run_dp(g, nd, SolutionKind::Cover);
}

FptResult fpt_max_matching(const TemporalGraph& g, const NiceTreeDecomposition& nd) {
    return run_dp(g, nd, SolutionKind::Matching);
}

}  // namespace tempo
