#include <catch2/catch_amalgamated.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include "helpers.hpp"
#include "mlbn/tropical.hpp"
#include "mlbn/weighted_dag.hpp"

using namespace mlbn;
using testutil::diamond;
using testutil::diamond21;

namespace {

// Exact lane: max-times over arbitrary-precision rationals, zero weight
// meaning "no path".
struct MaxTimesRational {
    using Value = boost::multiprecision::cpp_rational;
    static Value zero() { return 0; }
    static Value one() { return 1; }
    static Value times(const Value& a, const Value& b) { return a * b; }
    static bool less(const Value& a, const Value& b) { return a < b; }
    static bool tie(const Value& a, const Value& b) { return a == b; }
};

double brute_best_log(const WeightedDag& w, int i, int j) {
    double best = -std::numeric_limits<double>::infinity();
    if (i == j) return 0.0;
    testutil::all_directed_paths(w.dag(), i, j, [&](const std::vector<int>& p) {
        double s = 0;
        for (size_t t = 1; t < p.size(); ++t) s += w.log_weight(p[t - 1], p[t]);
        best = std::max(best, s);
    });
    return best;
}

}  // namespace

TEST_CASE("path weights multiply along the path") {
    WeightedDag w(3, {{0, 1, 2.0}, {1, 2, 3.0}});
    CHECK(w.weight(0, 1) == Catch::Approx(2.0));

    Path chain{{0, 1, 2}, PathKind::directed};
    CHECK(w.path_weight(chain) == Catch::Approx(6.0));

    Path trivial{{1}, PathKind::directed};
    CHECK(w.path_weight(trivial) == Catch::Approx(1.0));  // empty product

    Path not_a_path{{0, 2}, PathKind::directed};
    CHECK_THROWS_AS(w.path_weight(not_a_path), std::invalid_argument);
}

TEST_CASE("kleene star on the small examples") {
    // complete 3-node DAG: both 0->2 routes compete
    WeightedDag w = testutil::complete3(2.0, 3.0, 5.0);
    CHECK(w.kleene(0, 2) == Catch::Approx(6.0));
    CHECK(w.kleene(0, 1) == Catch::Approx(2.0));
    CHECK(w.kleene(2, 0) == 0.0);

    // edgeless graph: identity under max-times
    WeightedDag empty(3, {});
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(empty.kleene(i, j) == (i == j ? 1.0 : 0.0));

    // the long route around the 21-diamond dominates the direct edge
    WeightedDag d21 = diamond21(2.0, 2.0, 2.0, 1.0);
    CHECK(d21.kleene(1, 3) == Catch::Approx(8.0));
}

TEST_CASE("critical path reconstruction") {
    WeightedDag d = diamond();  // 0->2->3 heavier than 0->1->3
    auto p = d.critical_path(0, 3);
    REQUIRE(p);
    CHECK(p->nodes == std::vector<int>{0, 2, 3});

    auto trivial = d.critical_path(2, 2);
    REQUIRE(trivial);
    CHECK(trivial->nodes == std::vector<int>{2});

    CHECK_FALSE(d.critical_path(3, 0));

    WeightedDag d21 = diamond21();
    auto q = d21.critical_path(1, 3);
    REQUIRE(q);
    CHECK(q->nodes == std::vector<int>{1, 0, 2, 3});
}

TEST_CASE("genericity detection") {
    WeightedDag tree(4, {{0, 1, 1.5}, {0, 2, 0.5}, {1, 3, 2.0}});
    CHECK(tree.is_generic());

    // forced tie: both diamond routes weigh exactly 1.0
    WeightedDag tied = diamond(2.0, 4.0, 0.5, 0.25);
    CHECK_FALSE(tied.is_generic());
    CHECK(tied.tied(0, 3));
    CHECK_THROWS_AS(tied.critical_path(0, 3), genericity_error);

    CHECK(diamond().is_generic());
}

TEST_CASE("star matches brute-force path enumeration on random models") {
    for (uint64_t seed = 1; seed <= 30; ++seed) {
        auto w = testutil::random_model(8, 3, seed);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) {
                double expect = (i == j) ? 0.0 : brute_best_log(w, i, j);
                double got = w.kleene_log(i, j);
                if (std::isinf(expect))
                    CHECK(std::isinf(got));
                else
                    CHECK(got == Catch::Approx(expect).epsilon(1e-9));
            }
    }
}

TEST_CASE("critical path weight equals the star entry and nests") {
    for (uint64_t seed = 1; seed <= 15; ++seed) {
        auto w = testutil::random_model(8, 3, seed);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) {
                if (i == j || !w.reaches(i, j)) continue;
                auto p = w.critical_path(i, j);
                REQUIRE(p);
                CHECK(w.path_log_weight(*p) == Catch::Approx(w.kleene_log(i, j)).margin(1e-9));
                // every prefix is the critical path to its endpoint
                for (size_t t = 1; t + 1 < p->nodes.size(); ++t) {
                    auto prefix = w.critical_path(i, p->nodes[t]);
                    REQUIRE(prefix);
                    CHECK(std::vector<int>(p->nodes.begin(), p->nodes.begin() + t + 1) ==
                          prefix->nodes);
                }
            }
    }
}

TEST_CASE("squaring route agrees with the dp route") {
    for (uint64_t seed = 1; seed <= 15; ++seed) {
        auto w = testutil::random_model(7, 3, seed);
        const int n = 7;
        auto weights = tropical::make_matrix<tropical::MaxPlusDouble>(
            n, tropical::MaxPlusDouble::zero());
        for (auto [u, v] : w.dag().edges()) weights[u][v] = w.log_weight(u, v);
        auto by_squaring = tropical::kleene_star_by_squaring<tropical::MaxPlusDouble>(
            w.dag(), weights);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (std::isinf(by_squaring[i][j]))
                    CHECK(std::isinf(w.kleene_log(i, j)));
                else
                    CHECK(by_squaring[i][j] == Catch::Approx(w.kleene_log(i, j)).margin(1e-9));
            }
    }
}

TEST_CASE("starred matrices are idempotent") {
    for (uint64_t seed = 1; seed <= 10; ++seed) {
        auto w = testutil::random_model(7, 3, seed);
        const int n = 7;
        tropical::Matrix<tropical::MaxPlusDouble> star(n, std::vector<double>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) star[i][j] = w.kleene_log(i, j);
        auto twice = tropical::multiply<tropical::MaxPlusDouble>(star, star);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (std::isinf(star[i][j]))
                    CHECK(std::isinf(twice[i][j]));
                else
                    CHECK(twice[i][j] == Catch::Approx(star[i][j]).margin(1e-9));
            }
    }
}

TEST_CASE("exact rational lane agrees with exhaustive enumeration") {
    using R = MaxTimesRational;
    using Q = R::Value;
    for (uint64_t seed = 1; seed <= 12; ++seed) {
        auto model = testutil::random_model(7, 3, seed);
        const Dag& g = model.dag();
        const int n = g.node_count();
        mlbn::detail::Rng rng(seed * 977);
        auto weights = tropical::make_matrix<R>(n, R::zero());
        for (auto [u, v] : g.edges())
            weights[u][v] = Q(1 + rng.below(8), 1 + rng.below(8));

        auto star = tropical::kleene_star_dp<R>(g, weights);
        auto squared = tropical::kleene_star_by_squaring<R>(g, weights);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Q expect = (i == j) ? Q(1) : Q(0);
                testutil::all_directed_paths(g, i, j, [&](const std::vector<int>& p) {
                    if (static_cast<int>(p.size()) < 2) return;
                    Q prod = 1;
                    for (size_t t = 1; t < p.size(); ++t) prod *= weights[p[t - 1]][p[t]];
                    expect = std::max(expect, prod);
                });
                CHECK(star.best[i][j] == expect);
                CHECK(squared[i][j] == expect);
            }
    }
}
