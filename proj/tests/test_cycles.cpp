#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "mlbn/cycles.hpp"

using namespace mlbn;

TEST_CASE("plain 6-cycle") {
    Skeleton s(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
    auto cycles = induced_cycles(s, 6);
    REQUIRE(cycles.size() == 1);
    CHECK(cycles[0] == std::vector<int>{0, 1, 2, 3, 4, 5});

    // the cap hides it
    CHECK(induced_cycles(s, 5).empty());
}

TEST_CASE("hexagon with one long chord splits into its chordless parts") {
    Skeleton s(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}, {0, 3}});
    auto cycles = induced_cycles(s, 6);
    REQUIRE(cycles.size() == 2);
    CHECK(cycles[0] == std::vector<int>{0, 1, 2, 3});
    CHECK(cycles[1] == std::vector<int>{0, 3, 4, 5});
}

TEST_CASE("trees have no cycles") {
    Skeleton s(6, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}});
    CHECK(induced_cycles(s, 6).empty());
}

TEST_CASE("max_len must be at least 3") {
    Skeleton s(3, {{0, 1}, {1, 2}, {0, 2}});
    CHECK_THROWS_AS(induced_cycles(s, 2), std::invalid_argument);
    auto tri = induced_cycles(s, 3);
    REQUIRE(tri.size() == 1);
    CHECK(tri[0] == std::vector<int>{0, 1, 2});
}

TEST_CASE("enumeration matches subset brute force on random skeletons") {
    for (uint64_t seed = 1; seed <= 25; ++seed) {
        auto w = testutil::random_model(8, 4, seed);
        Skeleton s = skeleton(w.dag());
        auto fast = induced_cycles(s, 8);
        auto brute = testutil::brute_induced_cycles(s, 8);
        std::sort(brute.begin(), brute.end());
        CHECK(fast == brute);

        // every reported set really induces a chordless cycle
        for (auto& cyc : fast) {
            NodeSet v = NodeSet::from(8, cyc);
            Skeleton sub = induced_subgraph(s, v);
            for (int node : cyc) CHECK(sub.degree(node) == 2);
            CHECK(sub.edge_count() == static_cast<int>(cyc.size()));
        }
    }
}
