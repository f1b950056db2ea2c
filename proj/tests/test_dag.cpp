#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "mlbn/dag.hpp"

using namespace mlbn;
using testutil::cassiopeia;

TEST_CASE("dag construction validates input") {
    CHECK_THROWS_AS(Dag(3, {{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Dag(3, {{0, 1}, {0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(Dag(3, {{0, 1}, {1, 2}, {2, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Dag(2, {{0, 3}}), std::invalid_argument);
    CHECK_NOTHROW(Dag(3, {{0, 1}, {1, 2}, {0, 2}}));
}

TEST_CASE("relatives on the Cassiopeia graph") {
    Dag g = cassiopeia();
    CHECK(g.parents(3) == NodeSet(5, {0, 1}));
    CHECK(g.parents(0) == NodeSet(5));  // source node
    CHECK(g.ancestors(3) == NodeSet(5, {0, 1}));
    CHECK(g.descendants(1) == NodeSet(5, {3, 4}));
}

TEST_CASE("ancestors of the diamond sink") {
    Dag g(5, {{1, 2}, {1, 3}, {2, 4}, {3, 4}});
    CHECK(g.ancestors(4) == NodeSet(5, {1, 2, 3}));
    CHECK(g.ancestors(1) == NodeSet(5));
}

TEST_CASE("set-level ancestor conventions") {
    Dag g(5, {{0, 1}, {1, 2}, {3, 2}, {2, 4}});
    NodeSet k(5, {2, 3});
    // an(K) excludes K itself, An(K) includes it
    CHECK(g.ancestors_of_set(k) == NodeSet(5, {0, 1}));
    CHECK(g.ancestral_closure(k) == NodeSet(5, {0, 1, 2, 3}));
    CHECK(g.descendants_of_set(k) == NodeSet(5, {4}));
}

TEST_CASE("skeleton projection") {
    CHECK(skeleton(Dag(4, {})).edge_count() == 0);

    Dag d21(4, {{1, 0}, {0, 2}, {2, 3}, {1, 3}});
    auto edges = skeleton(d21).edges();
    CHECK(edges == std::vector<Edge>{{0, 1}, {0, 2}, {1, 3}, {2, 3}});

    Dag complete(3, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(skeleton(complete).edge_count() == 3);
}

TEST_CASE("unshielded triples") {
    // diamond: the two non-adjacent pairs flank their common neighbors
    Dag g(5, {{1, 2}, {1, 3}, {2, 4}, {3, 4}});
    auto triples = unshielded_triples(skeleton(g));
    CHECK(triples == std::vector<std::tuple<int, int, int>>{{2, 1, 3}, {2, 4, 3}});

    CHECK(unshielded_triples(skeleton(Dag(3, {{0, 1}, {1, 2}, {0, 2}}))).empty());

    auto path = unshielded_triples(skeleton(Dag(3, {{0, 1}, {1, 2}})));
    CHECK(path == std::vector<std::tuple<int, int, int>>{{0, 1, 2}});
}

TEST_CASE("induced subgraph keeps node ids") {
    Dag g(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    NodeSet all(4, {0, 1, 2, 3});
    CHECK(induced_subgraph(g, all) == g);
    CHECK(induced_subgraph(g, NodeSet(4)).edge_count() == 0);

    NodeSet w(4, {0, 1, 2});
    Dag sub = induced_subgraph(g, w);
    CHECK(sub.edges() == std::vector<Edge>{{0, 1}, {1, 2}});
    CHECK(sub.node_count() == 4);
}

TEST_CASE("ancestors equal the fixed point of parent expansion") {
    for (uint64_t seed = 1; seed <= 20; ++seed) {
        auto w = testutil::random_model(8, 3, seed);
        const Dag& g = w.dag();
        for (int v = 0; v < 8; ++v) {
            NodeSet expect(8);
            bool grew = true;
            NodeSet frontier = g.parents(v);
            while (grew) {
                grew = false;
                frontier.for_each([&](int u) {
                    if (!expect.contains(u)) {
                        expect.insert(u);
                        grew = true;
                    }
                });
                NodeSet next(8);
                expect.for_each([&](int u) { next = next | g.parents(u); });
                frontier = next;
            }
            CHECK(g.ancestors(v) == expect);
        }
    }
}

TEST_CASE("topological order is consistent with edges") {
    for (uint64_t seed = 1; seed <= 10; ++seed) {
        auto w = testutil::random_model(9, 3, seed);
        const auto& order = w.dag().topological_order();
        std::vector<int> pos(9);
        for (int t = 0; t < 9; ++t) pos[order[t]] = t;
        for (auto [u, v] : w.dag().edges()) CHECK(pos[u] < pos[v]);
    }
}
