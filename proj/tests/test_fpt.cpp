#include <doctest.h>

#include <map>
#include <set>

#include "helpers.hpp"
#include "tempo/brute.hpp"
#include "tempo/fpt.hpp"
#include "tempo/verify.hpp"

using namespace tempo;

namespace {

NiceTreeDecomposition nice_of(const TemporalGraph& g, TieBreak tie) {
    return to_nice(decomposition_from_order(g.base(), min_fill_order(g.base(), tie)));
}

// Vertices appearing in the subtree rooted at each node.
std::vector<std::set<int>> subtree_vertices(const NiceTreeDecomposition& nd) {
    std::vector<std::set<int>> vt(nd.nodes.size());
    // nodes are created children-first, so ascending order is a post-order
    for (std::size_t i = 0; i < nd.nodes.size(); ++i) {
        for (int c : nd.nodes[i].children) vt[i].insert(vt[c].begin(), vt[c].end());
        vt[i].insert(nd.nodes[i].bag.begin(), nd.nodes[i].bag.end());
    }
    return vt;
}

bool edges_compatible(const TemporalGraph& g, int i, int j) {
    const Edge& a = g.base().edge(i);
    const Edge& b = g.base().edge(j);
    if (!a.contains(b.u) && !a.contains(b.v)) return true;
    const auto& la = g.label(i);
    const auto& lb = g.label(j);
    return std::find_first_of(la.begin(), la.end(), lb.begin(), lb.end()) == la.end();
}

// Recomputes one node's table from the problem statement alone: enumerate
// every edge subset of the subtree-induced subgraph and bucket it by its
// (bag-edge choice, touched bag appearances) state.
std::map<std::pair<std::uint32_t, std::uint64_t>, int> definition_table(
    const TemporalGraph& g, const BagContext& ctx, const std::set<int>& subtree,
    SolutionKind kind) {
    std::vector<int> sub_edges;
    for (int i = 0; i < g.edge_count(); ++i) {
        const Edge& e = g.base().edge(i);
        if (subtree.count(e.u) && subtree.count(e.v)) sub_edges.push_back(i);
    }
    int m = static_cast<int>(sub_edges.size());
    REQUIRE(m <= 16);

    std::set<TemporalVertex> coverable;
    for (const TemporalVertex& tv : coverable_universe(g)) coverable.insert(tv);
    std::vector<int> forgotten;
    for (int v : subtree)
        if (!std::binary_search(ctx.bag.begin(), ctx.bag.end(), v)) forgotten.push_back(v);

    std::map<std::pair<std::uint32_t, std::uint64_t>, int> table;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        std::vector<int> chosen;
        for (int i = 0; i < m; ++i)
            if (mask & (1u << i)) chosen.push_back(sub_edges[i]);

        auto touches = [&](const TemporalVertex& tv) {
            for (int ei : chosen) {
                if (!g.base().edge(ei).contains(tv.v)) continue;
                if (std::binary_search(g.label(ei).begin(), g.label(ei).end(), tv.t)) return true;
            }
            return false;
        };

        if (kind == SolutionKind::Matching) {
            bool ok = true;
            for (std::size_t a = 0; a < chosen.size() && ok; ++a)
                for (std::size_t b = a + 1; b < chosen.size() && ok; ++b)
                    ok = edges_compatible(g, chosen[a], chosen[b]);
            if (!ok) continue;
        } else {
            bool ok = true;
            for (int v : forgotten) {
                for (int t = 1; t <= g.tau() && ok; ++t)
                    if (coverable.count(TemporalVertex(v, t)) && !touches(TemporalVertex(v, t)))
                        ok = false;
                if (!ok) break;
            }
            if (!ok) continue;
        }

        std::uint32_t s_bits = 0;
        for (int ei : chosen) {
            auto it = std::lower_bound(ctx.edges.begin(), ctx.edges.end(), g.base().edge(ei));
            if (it != ctx.edges.end() && *it == g.base().edge(ei))
                s_bits |= 1u << (it - ctx.edges.begin());
        }
        std::uint64_t c_bits = 0;
        for (int p = 0; p < ctx.tv_count(); ++p)
            if (touches(ctx.tvs[p])) c_bits |= 1ull << p;

        auto key = std::make_pair(s_bits, c_bits);
        auto it = table.find(key);
        int size = static_cast<int>(chosen.size());
        if (it == table.end())
            table[key] = size;
        else if (kind == SolutionKind::Cover ? size < it->second : size > it->second)
            it->second = size;
    }
    return table;
}

int check_tables_match(const TemporalGraph& g, const NiceTreeDecomposition& nd,
                       SolutionKind kind) {
    TemporalDP dp(g, nd, kind);
    auto vt = subtree_vertices(nd);
    int joins = 0;
    for (int node = 0; node < dp.node_count(); ++node) {
        if (nd.nodes[node].kind == NodeKind::Join) ++joins;
        auto expected = definition_table(g, dp.context(node), vt[node], kind);
        const DPTable& got = dp.table(node);
        REQUIRE(got.size() == expected.size());
        for (const auto& [key, value] : expected) {
            auto it = got.find(DPKey{key.first, key.second});
            REQUIRE(it != got.end());
            CHECK(it->second.value == value);
        }
    }
    return joins;
}

}  // namespace

TEST_CASE("named instances solve to known optima") {
    TemporalGraph k2 = th::tg(2, {{Edge(1, 2), {1}}});
    CHECK(fpt_min_edge_cover(k2, nice_of(k2, TieBreak::LowVertex)).size == 1);
    CHECK(fpt_max_matching(k2, nice_of(k2, TieBreak::LowVertex)).size == 1);

    TemporalGraph p3 = th::tg(3, {{Edge(1, 2), {1}}, {Edge(2, 3), {1}}});
    CHECK(fpt_min_edge_cover(p3, nice_of(p3, TieBreak::LowVertex)).size == 2);
    CHECK(fpt_max_matching(p3, nice_of(p3, TieBreak::LowVertex)).size == 1);

    // two-branch spider: each leaf pair forces its own branch edge
    TemporalGraph spider = th::tg(5, {{Edge(1, 2), {1, 2}},
                                      {Edge(1, 3), {1, 2}},
                                      {Edge(2, 4), {1}},
                                      {Edge(3, 5), {2}}});
    CHECK(fpt_min_edge_cover(spider, nice_of(spider, TieBreak::LowVertex)).size == 4);

    TemporalGraph star2 = th::tg(3, {{Edge(1, 2), {1}}, {Edge(1, 3), {2}}});
    CHECK(fpt_max_matching(star2, nice_of(star2, TieBreak::LowVertex)).size == 2);

    TemporalGraph star3 = th::tg(4, {{Edge(1, 2), {1}}, {Edge(1, 3), {1}}, {Edge(1, 4), {2}}});
    CHECK(fpt_max_matching(star3, nice_of(star3, TieBreak::LowVertex)).size == 2);

    TemporalGraph edgeless = th::tg(3, {}, 2);
    CHECK(fpt_min_edge_cover(edgeless, nice_of(edgeless, TieBreak::LowVertex)).size == 0);
    CHECK(fpt_max_matching(edgeless, nice_of(edgeless, TieBreak::LowVertex)).size == 0);
}

TEST_CASE("leaf tables hold exactly the empty state") {
    TemporalGraph g = th::tg(3, {{Edge(1, 2), {1}}, {Edge(2, 3), {1}}});
    NiceTreeDecomposition nd = nice_of(g, TieBreak::LowVertex);
    for (auto kind : {SolutionKind::Cover, SolutionKind::Matching}) {
        TemporalDP dp(g, nd, kind);
        for (int node = 0; node < dp.node_count(); ++node) {
            if (nd.nodes[node].kind != NodeKind::Leaf) continue;
            REQUIRE(dp.table(node).size() == 1);
            auto it = dp.table(node).find(DPKey{0, 0});
            REQUIRE(it != dp.table(node).end());
            CHECK(it->second.value == 0);
        }
    }
}

TEST_CASE("only feasible states are stored after an introduce") {
    TemporalGraph k2 = th::tg(2, {{Edge(1, 2), {1}}});
    NiceTreeDecomposition nd = nice_of(k2, TieBreak::LowVertex);
    int node = -1;
    for (std::size_t i = 0; i < nd.nodes.size(); ++i)
        if (nd.nodes[i].kind == NodeKind::Introduce && nd.nodes[i].bag.size() == 2)
            node = static_cast<int>(i);
    REQUIRE(node >= 0);

    TemporalDP dp(k2, nd, SolutionKind::Cover);
    const BagContext& ctx = dp.context(node);
    REQUIRE(ctx.edge_count() == 1);
    REQUIRE(ctx.tv_count() == 2);
    const DPTable& table = dp.table(node);
    // picking the edge covers both appearances; skipping it covers none
    REQUIRE(table.size() == 2);
    CHECK(table.at(DPKey{0, 0}).value == 0);
    CHECK(table.at(DPKey{1, 3}).value == 1);
    CHECK(table.count(DPKey{1, 0}) == 0);
    CHECK(table.count(DPKey{0, 1}) == 0);
    CHECK(table.count(DPKey{0, 2}) == 0);
}

TEST_CASE("every table equals its from-scratch recomputation") {
    int joins = 0;
    std::vector<TemporalGraph> fixtures;
    fixtures.push_back(th::tg(2, {{Edge(1, 2), {1}}}));
    fixtures.push_back(th::tg(3, {{Edge(1, 2), {1}}, {Edge(2, 3), {1}}}));
    fixtures.push_back(th::tg(4, {{Edge(1, 2), {1}}, {Edge(1, 3), {1}}, {Edge(1, 4), {2}}}));
    // triangle with a pendant, mixed labels: has a join under min-fill
    fixtures.push_back(th::tg(4, {{Edge(1, 2), {1, 2}},
                                  {Edge(1, 3), {2}},
                                  {Edge(2, 3), {1}},
                                  {Edge(3, 4), {1}}}));
    th::Rng rng(21);
    while (fixtures.size() < 12)
        fixtures.push_back(th::random_instance(rng, 2 + rng.below(4), 8, 1 + rng.below(2)));

    for (const TemporalGraph& g : fixtures) {
        for (auto tie : {TieBreak::LowVertex, TieBreak::HighVertex}) {
            NiceTreeDecomposition nd = nice_of(g, tie);
            joins += check_tables_match(g, nd, SolutionKind::Cover);
            joins += check_tables_match(g, nd, SolutionKind::Matching);
        }
    }
    CHECK(joins > 0);  // the corpus must exercise join nodes
}

TEST_CASE("solver agrees with exhaustive search across decompositions") {
    th::Rng rng(22);
    for (int round = 0; round < 40; ++round) {
        TemporalGraph g = th::random_instance(rng, 1 + rng.below(7), 10, 1 + rng.below(3));
        BruteResult cover = brute_min_edge_cover(g);
        BruteResult matching = brute_max_matching(g);
        for (auto tie : {TieBreak::LowVertex, TieBreak::HighVertex}) {
            NiceTreeDecomposition nd = nice_of(g, tie);

            FptResult fc = fpt_min_edge_cover(g, nd);
            CHECK(fc.size == cover.size);
            CHECK(verify_edge_cover(g, fc.solution).ok);
            CHECK(static_cast<int>(fc.solution.edges.size()) == fc.size);

            FptResult fm = fpt_max_matching(g, nd);
            CHECK(fm.size == matching.size);
            CHECK(verify_matching(g, fm.solution).ok);
            CHECK(static_cast<int>(fm.solution.edges.size()) == fm.size);
        }
    }
}

TEST_CASE("stats expose per-node table sizes") {
    TemporalGraph g = th::tg(4, {{Edge(1, 2), {1, 2}},
                                 {Edge(1, 3), {2}},
                                 {Edge(2, 3), {1}},
                                 {Edge(3, 4), {1}}});
    NiceTreeDecomposition nd = nice_of(g, TieBreak::LowVertex);
    TemporalDP dp(g, nd, SolutionKind::Cover);
    DPStats stats = dp.stats();
    REQUIRE(stats.per_node.size() == nd.nodes.size());
    std::size_t total = 0;
    for (const NodeStat& s : stats.per_node) {
        CHECK(s.entries == dp.table(s.node).size());
        // table keys range over bag-edge and bag-appearance subsets
        CHECK(s.entries <= (std::size_t{1} << s.bag_edges) * (std::size_t{1} << s.bag_tvs));
        total += s.entries;
    }
    CHECK(stats.total_entries() == total);
}

TEST_CASE("table dump uses the documented line format") {
    TemporalGraph k2 = th::tg(2, {{Edge(1, 2), {1}}});
    NiceTreeDecomposition nd = nice_of(k2, TieBreak::LowVertex);
    TemporalDP dp(k2, nd, SolutionKind::Cover);
    std::string dump = dp.dump_tables();
    CHECK(dump.find("0 - - 0\n") != std::string::npos);   // empty leaf state
    CHECK(dump.find(" 1 11 1\n") != std::string::npos);   // edge chosen, both covered
    CHECK(dump.find(" 0 00 0\n") != std::string::npos);   // nothing chosen
}

TEST_CASE("invalid nice decompositions are rejected") {
    TemporalGraph g = th::tg(3, {{Edge(1, 2), {1}}, {Edge(2, 3), {1}}});
    NiceTreeDecomposition nd = nice_of(g, TieBreak::LowVertex);
    NiceTreeDecomposition broken = nd;
    broken.nodes[broken.root].bag = {1};  // root must be empty
    CHECK_THROWS_AS(TemporalDP(g, broken, SolutionKind::Cover), std::invalid_argument);

    NiceTreeDecomposition missing = nd;
    for (NiceNode& node : missing.nodes) {
        auto it = std::find(node.bag.begin(), node.bag.end(), 3);
        if (it != node.bag.end()) node.bag.erase(it);
    }
    CHECK_THROWS_AS(TemporalDP(g, missing, SolutionKind::Cover), std::invalid_argument);
}

TEST_CASE("adding a time label never raises the cover optimum by more than one") {
    th::Rng rng(23);
    int tried = 0;
    for (int round = 0; round < 80; ++round) {
        TemporalGraph g = th::random_instance(rng, 2 + rng.below(5), 8, 1 + rng.below(3));
        if (g.edge_count() == 0) continue;
        int pick = rng.below(g.edge_count());

        std::vector<std::vector<int>> labels;
        for (int i = 0; i < g.edge_count(); ++i) labels.push_back(g.label(i));
        int t = 1;
        while (std::binary_search(labels[pick].begin(), labels[pick].end(), t)) ++t;
        labels[pick].insert(
            std::lower_bound(labels[pick].begin(), labels[pick].end(), t), t);
        TemporalGraph extended(g.base(), std::max(g.tau(), t), std::move(labels));

        int before = brute_min_edge_cover(g).size;
        int after = brute_min_edge_cover(extended).size;
        CHECK(after <= before + 1);
        ++tried;
    }
    CHECK(tried >= 50);
}
