#include <doctest.h>

#include "helpers.hpp"
#include "tempo/approx.hpp"
#include "tempo/brute.hpp"
#include "tempo/setcover.hpp"
#include "tempo/verify.hpp"

using namespace tempo;

TEST_CASE("greedy cover is valid and within its guarantee") {
    th::Rng rng(41);
    for (int round = 0; round < 120; ++round) {
        int tau = 1 + rng.below(4);
        TemporalGraph g = th::random_instance(rng, 1 + rng.below(7), 10, tau);
        CoverApproxReport rep = greedy_temporal_edge_cover(g);
        CHECK(verify_edge_cover(g, rep.solution).ok);
        CHECK(rep.bound_factor == doctest::Approx(2.0 * harmonic(tau)));

        int opt = brute_min_edge_cover(g).size;
        CHECK(static_cast<double>(rep.solution.edges.size()) <=
              rep.bound_factor * opt + 1e-9);

        // one step per vertex, ascending, and no step adds more edges than
        // it had appearances to cover
        REQUIRE(rep.steps.size() == static_cast<std::size_t>(g.vertex_count()));
        for (std::size_t i = 0; i < rep.steps.size(); ++i) {
            CHECK(rep.steps[i].vertex == static_cast<int>(i) + 1);
            CHECK(rep.steps[i].edges_added <= rep.steps[i].universe_size);
        }
    }
}

TEST_CASE("greedy cover sweep follows its documented order on a fixed instance") {
    TemporalGraph g = th::tg(5, {{Edge(1, 2), {1, 3}},
                                 {Edge(1, 4), {2}},
                                 {Edge(2, 3), {2, 3}},
                                 {Edge(3, 5), {1}},
                                 {Edge(4, 5), {1, 2, 3}}});
    CoverApproxReport rep = greedy_temporal_edge_cover(g);
    CHECK(verify_edge_cover(g, rep.solution).ok);

    // hand-traced sweep: vertex 1 needs all three times ((1,2) then (1,4)),
    // vertex 2 is left open only at time 2 ((2,3)), vertex 3 at time 1
    // ((3,5)), vertex 4 at times 1 and 3 ((4,5)), vertex 5 is done
    REQUIRE(rep.steps.size() == 5);
    int expected[5][3] = {{1, 3, 2}, {2, 1, 1}, {3, 1, 1}, {4, 2, 1}, {5, 0, 0}};
    for (int i = 0; i < 5; ++i) {
        CHECK(rep.steps[i].vertex == expected[i][0]);
        CHECK(rep.steps[i].universe_size == expected[i][1]);
        CHECK(rep.steps[i].edges_added == expected[i][2]);
    }
    std::vector<Edge> want{Edge(1, 2), Edge(1, 4), Edge(2, 3), Edge(3, 5), Edge(4, 5)};
    CHECK(rep.solution.edges == want);
}

TEST_CASE("snapshot matching is valid and certifies a tau-factor bound") {
    th::Rng rng(42);
    for (int round = 0; round < 120; ++round) {
        int tau = 1 + rng.below(4);
        TemporalGraph g = th::random_instance(rng, 1 + rng.below(7), 10, tau);
        MatchingApproxReport rep = snapshot_matching_approx(g);
        CHECK(verify_matching(g, rep.solution).ok);
        CHECK(rep.bound_factor == doctest::Approx(static_cast<double>(tau)));
        REQUIRE(rep.snapshot_sizes.size() == static_cast<std::size_t>(tau));

        int opt = brute_max_matching(g).size;
        CHECK(opt >= static_cast<int>(rep.solution.edges.size()));
        CHECK(opt <= tau * static_cast<int>(rep.solution.edges.size()));

        // the report names the earliest snapshot achieving the maximum
        int best = 0;
        for (int t = 1; t <= tau; ++t) best = std::max(best, rep.snapshot_sizes[t - 1]);
        CHECK(rep.snapshot_sizes[rep.best_time - 1] == best);
        for (int t = 1; t < rep.best_time; ++t) CHECK(rep.snapshot_sizes[t - 1] < best);
        CHECK(static_cast<int>(rep.solution.edges.size()) == best);
    }
}

TEST_CASE("a star spread over tau snapshots meets the factor exactly") {
    for (int tau : {2, 3, 4}) {
        std::vector<std::pair<Edge, std::vector<int>>> items;
        for (int t = 1; t <= tau; ++t) items.push_back({Edge(1, t + 1), {t}});
        TemporalGraph star = th::tg(tau + 1, items);
        MatchingApproxReport rep = snapshot_matching_approx(star);
        CHECK(rep.solution.edges.size() == 1);
        CHECK(rep.best_time == 1);
        CHECK(brute_max_matching(star).size == tau);
    }
}

TEST_CASE("edgeless and single-edge graphs behave sensibly") {
    TemporalGraph empty = th::tg(3, {}, 2);
    CHECK(greedy_temporal_edge_cover(empty).solution.edges.empty());
    CHECK(snapshot_matching_approx(empty).solution.edges.empty());
    CHECK(snapshot_matching_approx(empty).best_time == 1);

    TemporalGraph k2 = th::tg(2, {{Edge(1, 2), {2}}}, 3);
    CHECK(greedy_temporal_edge_cover(k2).solution.edges.size() == 1);
    MatchingApproxReport rep = snapshot_matching_approx(k2);
    CHECK(rep.solution.edges.size() == 1);
    CHECK(rep.best_time == 2);
}
