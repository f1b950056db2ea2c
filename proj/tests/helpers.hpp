#pragma once

// Shared fixtures and independent brute-force oracles for the test suite.
// The brute-force routines deliberately avoid the library's cached Kleene
// star and pattern machinery: paths are enumerated explicitly.

#include <cmath>
#include <functional>
#include <set>
#include <vector>

#include "mlbn/mlbn.hpp"

namespace testutil {

using mlbn::Dag;
using mlbn::Edge;
using mlbn::NodeSet;
using mlbn::Skeleton;
using mlbn::WeightedDag;

// --- fixtures (paper graphs renumbered to 0-based ids) ---

// 0 -> 3 <- 1 -> 4 <- 2
inline Dag cassiopeia() { return Dag(5, {{0, 3}, {1, 3}, {1, 4}, {2, 4}}); }

// 0 -> 1 -> 3, 0 -> 2 -> 3; collider at 3
inline WeightedDag diamond(double c01 = 1.0, double c02 = 1.2, double c13 = 1.0,
                           double c23 = 1.3) {
    return WeightedDag(4, {{0, 1, c01}, {0, 2, c02}, {1, 3, c13}, {2, 3, c23}});
}

// 1 -> 0 -> 2 -> 3 and the direct edge 1 -> 3, weighted so that the long
// route dominates: c13 < c10 * c02 * c23.
inline WeightedDag diamond21(double c10 = 1.4, double c02 = 1.3, double c23 = 1.5,
                             double c13 = 0.7) {
    return WeightedDag(4, {{1, 0, c10}, {0, 2, c02}, {2, 3, c23}, {1, 3, c13}});
}

// complete DAG on 3 nodes: 0 -> 1 -> 2 plus 0 -> 2
inline WeightedDag complete3(double c01, double c12, double c02) {
    return WeightedDag(3, {{0, 1, c01}, {1, 2, c12}, {0, 2, c02}});
}

inline Dag chain(int n) {
    std::vector<Edge> es;
    for (int v = 0; v + 1 < n; ++v) es.emplace_back(v, v + 1);
    return Dag(n, std::move(es));
}

// Hexagon with colliders 0 -> 1 <- 2 and 5 -> 4 <- 3; the edges {0,5} and
// {2,3} take the requested orientations.
inline WeightedDag hexagon_completion(bool zero_to_five, bool two_to_three, uint64_t seed = 7) {
    std::vector<Edge> es{{0, 1}, {2, 1}, {5, 4}, {3, 4}};
    es.push_back(zero_to_five ? Edge{0, 5} : Edge{5, 0});
    es.push_back(two_to_three ? Edge{2, 3} : Edge{3, 2});
    mlbn::detail::Rng rng(seed);
    std::vector<mlbn::WeightedEdge> wes;
    for (auto [u, v] : es) wes.emplace_back(u, v, 0.5 + rng.unit());
    return WeightedDag(6, wes);
}

// Ring of length len, nodes 0..len-1 in cyclic order, all edges directed away
// from `src` around to `sink` on both arcs.
inline WeightedDag ring_dag(int len, int src, int sink, uint64_t seed) {
    std::vector<Edge> es;
    for (int t = src; t % len != sink % len; ++t)
        es.emplace_back(t % len, (t + 1) % len);
    for (int t = src + len; t % len != sink % len; --t)
        es.emplace_back(t % len, (t - 1 + len) % len);
    mlbn::detail::Rng rng(seed);
    std::vector<mlbn::WeightedEdge> wes;
    for (auto [u, v] : es) wes.emplace_back(u, v, 0.5 + 1.5 * rng.unit());
    return WeightedDag(len, wes);
}

inline WeightedDag random_model(int n, int d, uint64_t seed) {
    mlbn::GenConfig cfg;
    cfg.n = n;
    cfg.max_in_degree = d;
    cfg.seed = seed;
    return mlbn::random_weighted_dag(cfg);
}

// --- subset and path enumeration ---

template <class F>
void for_all_subsets(const std::vector<int>& items, int universe, F&& f) {
    const int m = static_cast<int>(items.size());
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        NodeSet k(universe);
        for (int t = 0; t < m; ++t)
            if (mask & (1u << t)) k.insert(items[t]);
        f(k);
    }
}

inline std::vector<int> other_nodes(int n, int i, int j) {
    std::vector<int> out;
    for (int v = 0; v < n; ++v)
        if (v != i && v != j) out.push_back(v);
    return out;
}

inline void all_directed_paths(const Dag& g, int i, int j,
                               const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> path{i};
    NodeSet seen(g.node_count());
    seen.insert(i);
    auto dfs = [&](auto&& self) -> void {
        int u = path.back();
        if (u == j) {
            f(path);
            return;
        }
        g.children(u).for_each([&](int x) {
            if (seen.contains(x)) return;
            path.push_back(x);
            seen.insert(x);
            self(self);
            path.pop_back();
            seen.erase(x);
        });
    };
    dfs(dfs);
}

inline void all_undirected_paths(const Dag& g, int i, int j,
                                 const std::function<void(const std::vector<int>&)>& f) {
    Skeleton s = mlbn::skeleton(g);
    std::vector<int> path{i};
    NodeSet seen(g.node_count());
    seen.insert(i);
    auto dfs = [&](auto&& self) -> void {
        int u = path.back();
        if (u == j) {
            f(path);
            return;
        }
        s.neighbors(u).for_each([&](int x) {
            if (seen.contains(x)) return;
            path.push_back(x);
            seen.insert(x);
            self(self);
            path.pop_back();
            seen.erase(x);
        });
    };
    dfs(dfs);
}

// --- independent separation oracles ---

inline bool path_d_connecting(const Dag& g, const std::vector<int>& path, const NodeSet& k) {
    const NodeSet an_k = g.ancestral_closure(k);
    for (size_t t = 1; t + 1 < path.size(); ++t) {
        int prev = path[t - 1], mid = path[t], next = path[t + 1];
        bool collider = g.has_edge(prev, mid) && g.has_edge(next, mid);
        if (collider && !an_k.contains(mid)) return false;
        if (!collider && k.contains(mid)) return false;
    }
    return true;
}

inline int path_collider_count(const Dag& g, const std::vector<int>& path) {
    int c = 0;
    for (size_t t = 1; t + 1 < path.size(); ++t)
        if (g.has_edge(path[t - 1], path[t]) && g.has_edge(path[t + 1], path[t])) ++c;
    return c;
}

inline bool brute_d_separated(const Dag& g, int i, int j, const NodeSet& k) {
    bool connected = false;
    all_undirected_paths(g, i, j, [&](const std::vector<int>& p) {
        if (!connected && path_d_connecting(g, p, k)) connected = true;
    });
    return !connected;
}

inline bool brute_star_separated(const Dag& g, int i, int j, const NodeSet& k) {
    bool connected = false;
    all_undirected_paths(g, i, j, [&](const std::vector<int>& p) {
        if (!connected && path_collider_count(g, p) <= 1 && path_d_connecting(g, p, k))
            connected = true;
    });
    return !connected;
}

// Critical DAG by explicit path enumeration (log-domain weights straight off
// the edges). Fails the whole test if a pair has tied maxima.
inline std::vector<std::vector<char>> brute_critical_adjacency(const WeightedDag& w,
                                                               const NodeSet& k) {
    const int n = w.node_count();
    std::vector<std::vector<char>> edge(n, std::vector<char>(n, 0));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a == b) continue;
            double best = -1e300;
            std::vector<int> best_path;
            int ties = 0;
            all_directed_paths(w.dag(), a, b, [&](const std::vector<int>& p) {
                double s = 0;
                for (size_t t = 1; t < p.size(); ++t) s += w.log_weight(p[t - 1], p[t]);
                if (s > best + 1e-12) {
                    best = s;
                    best_path = p;
                    ties = 0;
                } else if (std::abs(s - best) <= 1e-12) {
                    ++ties;
                }
            });
            if (best_path.empty()) continue;
            if (ties > 0) throw mlbn::genericity_error("brute critical dag: tie");
            bool factors = false;
            for (size_t t = 1; t + 1 < best_path.size(); ++t)
                if (k.contains(best_path[t])) factors = true;
            if (!factors) edge[a][b] = 1;
        }
    return edge;
}

inline bool brute_cstar_separated(const WeightedDag& w, int i, int j, const NodeSet& k) {
    const int n = w.node_count();
    auto e = brute_critical_adjacency(w, k);
    auto outside = [&](int v) { return !k.contains(v); };
    if (e[i][j] || e[j][i]) return false;
    for (int p = 0; p < n; ++p)
        if (p != i && p != j && outside(p) && e[p][i] && e[p][j]) return false;
    for (int l = 0; l < n; ++l)
        if (k.contains(l) && e[i][l] && e[j][l]) return false;
    for (int l = 0; l < n; ++l) {
        if (!k.contains(l)) continue;
        for (int p = 0; p < n; ++p) {
            if (p == i || p == j || p == l || !outside(p)) continue;
            if (e[p][i] && e[p][l] && e[j][l]) return false;
            if (e[p][j] && e[p][l] && e[i][l]) return false;
        }
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) {
                if (p == q || p == i || p == j || p == l || q == i || q == j || q == l)
                    continue;
                if (!outside(p) || !outside(q)) continue;
                if (e[p][i] && e[p][l] && e[q][l] && e[q][j]) return false;
            }
    }
    return true;
}

inline std::vector<mlbn::CiStatement> brute_markov(
    const WeightedDag& w, const std::function<bool(int, int, const NodeSet&)>& sep) {
    const int n = w.node_count();
    std::vector<mlbn::CiStatement> out;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for_all_subsets(other_nodes(n, i, j), n, [&](const NodeSet& k) {
                if (sep(i, j, k)) out.push_back(mlbn::CiStatement::make(i, j, k));
            });
    std::sort(out.begin(), out.end());
    return out;
}

// Chordless cycles by raw subset enumeration: every vertex of s[W] has degree
// exactly 2 and s[W] is connected.
inline std::vector<std::vector<int>> brute_induced_cycles(const Skeleton& s, int max_len) {
    const int n = s.node_count();
    std::vector<std::vector<int>> out;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> nodes;
        for (int v = 0; v < n; ++v)
            if (mask & (1u << v)) nodes.push_back(v);
        if (static_cast<int>(nodes.size()) < 3 || static_cast<int>(nodes.size()) > max_len)
            continue;
        NodeSet w = NodeSet::from(n, nodes);
        bool degree_two = true;
        for (int v : nodes)
            if ((s.neighbors(v) & w).count() != 2) { degree_two = false; break; }
        if (!degree_two) continue;
        // connectivity within the subset
        NodeSet seen(n);
        std::vector<int> stack{nodes[0]};
        seen.insert(nodes[0]);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            (s.neighbors(v) & w).for_each([&](int x) {
                if (!seen.contains(x)) {
                    seen.insert(x);
                    stack.push_back(x);
                }
            });
        }
        if (seen.count() == static_cast<int>(nodes.size())) out.push_back(nodes);
    }
    return out;
}

inline std::set<std::pair<int, int>> edge_set(const std::vector<Edge>& edges) {
    return {edges.begin(), edges.end()};
}

}  // namespace testutil
