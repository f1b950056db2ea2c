#pragma once

#include <cmath>
#include <cstdlib>
#include <limits>
#include <vector>

#include "mlbn/dag.hpp"

namespace mlbn {
namespace tropical {

/// Relative tolerance under which two log-domain path weights count as equal.
/// Genericity is measure-theoretic in the underlying model; this
/// operationalizes it for floats.
inline constexpr double kTieRelTol = 1e-9;

/// Max-plus over doubles: log-domain path weights. zero() marks "no path".
struct MaxPlusDouble {
    using Value = double;
    static constexpr Value zero() { return -std::numeric_limits<double>::infinity(); }
    static constexpr Value one() { return 0.0; }
    static Value times(Value a, Value b) { return a + b; }
    static bool less(Value a, Value b) { return a < b; }
    static bool tie(Value a, Value b) {
        return std::abs(a - b) <= kTieRelTol * std::max(1.0, std::abs(a));
    }
};

template <class Semiring>
using Matrix = std::vector<std::vector<typename Semiring::Value>>;

template <class Semiring>
Matrix<Semiring> make_matrix(int n, typename Semiring::Value fill) {
    return Matrix<Semiring>(n, std::vector<typename Semiring::Value>(n, fill));
}

/// Kleene star plus the data needed downstream: per ordered pair the best
/// path weight, the weight of the best *distinct* second path, and the
/// predecessor of the target on the best path.
template <class Semiring>
struct StarResult {
    Matrix<Semiring> best;                   // star: one() on the diagonal, zero() if unreachable
    Matrix<Semiring> second;                 // zero() when fewer than two paths exist
    std::vector<std::vector<int>> parent;    // parent[i][j]: predecessor of j on the critical i->j path, -1 if none
};

/// One pass per source along the topological order. Each i->j path is counted
/// exactly once through its last edge, so `second` really is the runner-up
/// over distinct paths; matrix squaring cannot provide that (it splits one
/// path at many midpoints).
template <class Semiring>
StarResult<Semiring> kleene_star_dp(const Dag& g, const Matrix<Semiring>& weights) {
    using S = Semiring;
    const int n = g.node_count();
    StarResult<Semiring> r{make_matrix<S>(n, S::zero()), make_matrix<S>(n, S::zero()),
                           std::vector<std::vector<int>>(n, std::vector<int>(n, -1))};
    for (int src = 0; src < n; ++src) {
        auto& best = r.best[src];
        auto& second = r.second[src];
        auto& parent = r.parent[src];
        best[src] = S::one();
        for (int v : g.topological_order()) {
            if (v == src) continue;
            g.parents(v).for_each([&](int p) {
                if (best[p] == S::zero()) return;  // p unreachable from src
                const auto w = weights[p][v];
                // In a DAG the best path to v extends the best path to its
                // predecessor, so only c1 can displace best[v].
                const auto c1 = S::times(best[p], w);
                if (S::less(best[v], c1)) {
                    second[v] = best[v];
                    best[v] = c1;
                    parent[v] = p;
                } else if (S::less(second[v], c1)) {
                    second[v] = c1;
                }
                if (second[p] != S::zero()) {
                    const auto c2 = S::times(second[p], w);
                    if (S::less(second[v], c2)) second[v] = c2;
                }
            });
        }
    }
    return r;
}

template <class Semiring>
Matrix<Semiring> identity(int n) {
    auto m = make_matrix<Semiring>(n, Semiring::zero());
    for (int i = 0; i < n; ++i) m[i][i] = Semiring::one();
    return m;
}

template <class Semiring>
Matrix<Semiring> multiply(const Matrix<Semiring>& a, const Matrix<Semiring>& b) {
    using S = Semiring;
    const int n = static_cast<int>(a.size());
    auto c = make_matrix<S>(n, S::zero());
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            if (a[i][k] == S::zero()) continue;
            for (int j = 0; j < n; ++j) {
                if (b[k][j] == S::zero()) continue;
                auto cand = S::times(a[i][k], b[k][j]);
                if (S::less(c[i][j], cand)) c[i][j] = cand;
            }
        }
    return c;
}

/// Star via repeated squaring of (I + C); alternative route to the same
/// matrix, kept as a cross-check against the DP.
template <class Semiring>
Matrix<Semiring> kleene_star_by_squaring(const Dag& g, const Matrix<Semiring>& weights) {
    using S = Semiring;
    const int n = g.node_count();
    auto b = weights;
    for (int i = 0; i < n; ++i)
        if (S::less(b[i][i], S::one())) b[i][i] = S::one();
    int needed = 1;
    while ((1 << needed) < n) ++needed;
    for (int step = 0; step < needed; ++step) b = multiply<S>(b, b);
    return b;
}

}  // namespace tropical
}  // namespace mlbn
