#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "mlbn/dag.hpp"
#include "mlbn/errors.hpp"
#include "mlbn/node_set.hpp"
#include "mlbn/weighted_dag.hpp"

namespace mlbn {

/// Conditional independence statement [i ⫫ j | K], normalized to i < j with
/// both endpoints outside K.
struct CiStatement {
    int i = 0, j = 0;
    std::vector<int> cond;  // sorted ascending

    static CiStatement make(int i, int j, const NodeSet& k) {
        if (i == j) throw std::invalid_argument("CiStatement: endpoints must differ");
        if (k.contains(i) || k.contains(j))
            throw std::invalid_argument("CiStatement: endpoints must lie outside the conditioning set");
        CiStatement s;
        s.i = std::min(i, j);
        s.j = std::max(i, j);
        s.cond = k.to_vector();
        return s;
    }

    bool operator==(const CiStatement& o) const {
        return i == o.i && j == o.j && cond == o.cond;
    }

    // (i, j, |K|, K lexicographic)
    bool operator<(const CiStatement& o) const {
        if (i != o.i) return i < o.i;
        if (j != o.j) return j < o.j;
        if (cond.size() != o.cond.size()) return cond.size() < o.cond.size();
        return cond < o.cond;
    }
};

namespace detail {

inline void check_separation_args(int n, int i, int j, const NodeSet& k) {
    if (i < 0 || i >= n || j < 0 || j >= n) throw std::invalid_argument("separation: node out of range");
    if (i == j) throw std::invalid_argument("separation: endpoints must differ");
    if (k.contains(i) || k.contains(j))
        throw std::invalid_argument("separation: endpoints must lie outside the conditioning set");
}

}  // namespace detail

/// Classical d-separation, decided on the moral graph of the ancestral
/// closure of {i, j} ∪ K.
inline bool d_separated(const Dag& g, int i, int j, const NodeSet& k) {
    const int n = g.node_count();
    detail::check_separation_args(n, i, j, k);

    NodeSet seed(n);
    seed.insert(i);
    seed.insert(j);
    NodeSet relevant = g.ancestral_closure(seed | k);

    // Moral adjacency: skeleton edges plus married co-parents. The ancestral
    // closure contains every parent of its members, so no clipping is needed.
    std::vector<NodeSet> adj(n, NodeSet(n));
    relevant.for_each([&](int v) {
        auto pa = g.parents(v).to_vector();
        for (int p : pa) {
            adj[p].insert(v);
            adj[v].insert(p);
        }
        for (size_t a = 0; a < pa.size(); ++a)
            for (size_t b = a + 1; b < pa.size(); ++b) {
                adj[pa[a]].insert(pa[b]);
                adj[pa[b]].insert(pa[a]);
            }
    });

    NodeSet blocked = k;
    NodeSet visited(n);
    std::vector<int> stack{i};
    visited.insert(i);
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (v == j) return false;
        adj[v].for_each([&](int u) {
            if (!relevant.contains(u) || visited.contains(u) || blocked.contains(u)) return;
            visited.insert(u);
            stack.push_back(u);
        });
    }
    return true;
}

/// *-separation: no d-connecting path with at most one collider exists.
/// Decided by direct enumeration of simple paths; only the prefixes that can
/// still be d-connecting with <= 1 collider are extended.
inline bool star_separated(const Dag& g, int i, int j, const NodeSet& k) {
    const int n = g.node_count();
    detail::check_separation_args(n, i, j, k);

    const NodeSet an_k = g.ancestral_closure(k);
    Skeleton skel = skeleton(g);

    NodeSet on_path(n);
    on_path.insert(i);
    std::vector<int> path{i};

    // Returns true when a *-connecting path is found. The role of the
    // interior node `path.back()` becomes known once its successor is chosen.
    auto dfs = [&](auto&& self, int colliders) -> bool {
        int u = path.back();
        auto nexts = skel.neighbors(u).to_vector();
        for (int x : nexts) {
            if (on_path.contains(x)) continue;
            int c = colliders;
            if (path.size() >= 2) {
                int prev = path[path.size() - 2];
                bool collider = g.has_edge(prev, u) && g.has_edge(x, u);
                if (collider) {
                    if (!an_k.contains(u)) continue;  // blocked collider
                    if (++c > 1) continue;            // more than one collider
                } else {
                    if (k.contains(u)) continue;  // conditioned non-collider
                }
            }
            if (x == j) return true;
            path.push_back(x);
            on_path.insert(x);
            bool found = self(self, c);
            path.pop_back();
            on_path.erase(x);
            if (found) return true;
        }
        return false;
    };
    return !dfs(dfs, 0);
}

/// Critical DAG of (G, C) with respect to K: edge i -> j present iff j is
/// reachable from i and the unique critical i -> j path has no intermediate
/// node in K (endpoints exempt).
struct CriticalDag {
    Dag dag;
    NodeSet cond;
};

namespace detail {

/// Adjacency of a critical DAG, as parent/child bitsets per node.
struct CritAdj {
    std::vector<NodeSet> parents, children;
};

inline CritAdj build_critical_adjacency(const WeightedDag& w, const NodeSet& k) {
    const int n = w.node_count();
    CritAdj d{std::vector<NodeSet>(n, NodeSet(n)), std::vector<NodeSet>(n, NodeSet(n))};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j || !w.reaches(i, j)) continue;
            if (w.critical_intermediates(i, j).intersects(k)) continue;
            d.children[i].insert(j);
            d.parents[j].insert(i);
        }
    return d;
}

/// The five connecting patterns (a)-(e) between x and y in the critical DAG,
/// all pattern nodes pairwise distinct, colliders in K, non-colliders outside.
/// (a) and (d) are one-directional; the caller checks both orientations.
inline bool directed_patterns(const CritAdj& d, const NodeSet& k, int x, int y) {
    // (a) x -> y
    if (d.children[x].contains(y)) return true;
    // (d) p -> x, p -> l, y -> l with l in K, p not in K
    bool hit = false;
    (d.children[y] & k).for_each([&](int l) {
        if (hit) return;
        NodeSet p = (d.parents[x] & d.parents[l]).minus(k);
        p.erase(y);
        if (!p.empty()) hit = true;
    });
    return hit;
}

inline bool cstar_connected(const CritAdj& d, const NodeSet& k, int i, int j) {
    if (directed_patterns(d, k, i, j) || directed_patterns(d, k, j, i)) return true;
    // (b) common parent outside K
    if (!(d.parents[i] & d.parents[j]).minus(k).empty()) return true;
    // (c) common child inside K
    if (!(d.children[i] & d.children[j] & k).empty()) return true;
    // (e) p -> i, p -> l, q -> l, q -> j with l in K, p != q outside K
    bool hit = false;
    k.for_each([&](int l) {
        if (hit) return;
        NodeSet p = (d.parents[i] & d.parents[l]).minus(k);
        p.erase(j);
        if (p.empty()) return;
        NodeSet q = (d.parents[j] & d.parents[l]).minus(k);
        q.erase(i);
        if (q.empty()) return;
        if ((p | q).count() >= 2) hit = true;
    });
    return hit;
}

}  // namespace detail

inline CriticalDag critical_dag(const WeightedDag& w, const NodeSet& k) {
    if (!w.is_generic()) throw genericity_error("critical_dag: weights are not generic");
    auto adj = detail::build_critical_adjacency(w, k);
    std::vector<Edge> edges;
    for (int u = 0; u < w.node_count(); ++u)
        adj.children[u].for_each([&](int v) { edges.emplace_back(u, v); });
    return CriticalDag{Dag(w.node_count(), std::move(edges)), k};
}

/// Reusable C*-separation decider; critical DAGs are cached per conditioning
/// set, which pays off when many pairs share one K.
class CstarContext {
public:
    explicit CstarContext(const WeightedDag& w) : w_(&w) {
        if (!w.is_generic()) throw genericity_error("cstar separation requires generic weights");
    }

    bool separated(int i, int j, const NodeSet& k) const {
        detail::check_separation_args(w_->node_count(), i, j, k);
        auto it = cache_.find(k);
        if (it == cache_.end())
            it = cache_.emplace(k, detail::build_critical_adjacency(*w_, k)).first;
        return !detail::cstar_connected(it->second, k, i, j);
    }

private:
    const WeightedDag* w_;
    mutable std::unordered_map<NodeSet, detail::CritAdj, NodeSetHash> cache_;
};

inline bool cstar_separated(const WeightedDag& w, int i, int j, const NodeSet& k) {
    return CstarContext(w).separated(i, j, k);
}

enum class Criterion { d, star, cstar };

inline const char* to_string(Criterion c) {
    switch (c) {
        case Criterion::d: return "d";
        case Criterion::star: return "star";
        case Criterion::cstar: return "cstar";
    }
    return "?";
}

inline std::optional<Criterion> criterion_from_string(const std::string& s) {
    if (s == "d") return Criterion::d;
    if (s == "star") return Criterion::star;
    if (s == "cstar") return Criterion::cstar;
    return std::nullopt;
}

namespace detail {

inline uint64_t subset_work_estimate(int n, int max_cond) {
    // pairs * sum of binomials; saturating
    long double total = 0;
    long double binom = 1;  // C(n-2, 0)
    for (int l = 0; l <= max_cond; ++l) {
        if (l > 0) binom = binom * (n - 2 - (l - 1)) / l;
        total += binom;
    }
    total *= static_cast<long double>(n) * (n - 1) / 2;
    return total > 1e18L ? UINT64_MAX : static_cast<uint64_t>(total);
}

template <class Sep>
std::vector<CiStatement> enumerate_markov(int n, int max_cond, Sep&& separated) {
    std::vector<CiStatement> out;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            std::vector<int> rest;
            for (int v = 0; v < n; ++v)
                if (v != i && v != j) rest.push_back(v);
            const int m = static_cast<int>(rest.size());
            for (int size = 0; size <= std::min(m, max_cond); ++size) {
                std::vector<int> idx(size);
                for (int t = 0; t < size; ++t) idx[t] = t;
                while (true) {
                    NodeSet k(n);
                    for (int t : idx) k.insert(rest[t]);
                    if (separated(i, j, k)) out.push_back(CiStatement::make(i, j, k));
                    // next subset in colex order
                    int t = 0;
                    while (t < size) {
                        int limit = (t + 1 < size) ? idx[t + 1] : m;
                        if (idx[t] + 1 < limit) break;
                        ++t;
                    }
                    if (t == size) break;
                    ++idx[t];
                    for (int s = 0; s < t; ++s) idx[s] = s;
                }
                if (size == 0 && m == 0) break;
            }
        }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

/// Complete, duplicate-free enumeration of all separation statements with
/// |K| <= max_cond (entire range when max_cond is absent). Guarded against
/// infeasibly large enumerations.
inline std::vector<CiStatement> global_markov(const WeightedDag& w, Criterion criterion,
                                              std::optional<int> max_cond = std::nullopt) {
    const int n = w.node_count();
    const int mc = std::min<int>(max_cond.value_or(n), std::max(0, n - 2));
    if (detail::subset_work_estimate(n, mc) > (uint64_t{1} << 24))
        throw resource_error(
            "global_markov: enumeration too large; cap max_cond_size to keep it feasible");
    switch (criterion) {
        case Criterion::d:
            return detail::enumerate_markov(n, mc, [&](int i, int j, const NodeSet& k) {
                return d_separated(w.dag(), i, j, k);
            });
        case Criterion::star:
            return detail::enumerate_markov(n, mc, [&](int i, int j, const NodeSet& k) {
                return star_separated(w.dag(), i, j, k);
            });
        case Criterion::cstar: {
            CstarContext ctx(w);
            return detail::enumerate_markov(
                n, mc, [&](int i, int j, const NodeSet& k) { return ctx.separated(i, j, k); });
        }
    }
    throw std::invalid_argument("global_markov: unknown criterion");
}

inline std::vector<CiStatement> global_markov(const Dag& g, Criterion criterion,
                                              std::optional<int> max_cond = std::nullopt) {
    if (criterion == Criterion::cstar)
        throw std::invalid_argument("global_markov: cstar needs edge weights");
    const int n = g.node_count();
    const int mc = std::min<int>(max_cond.value_or(n), std::max(0, n - 2));
    if (detail::subset_work_estimate(n, mc) > (uint64_t{1} << 24))
        throw resource_error(
            "global_markov: enumeration too large; cap max_cond_size to keep it feasible");
    if (criterion == Criterion::d)
        return detail::enumerate_markov(
            n, mc, [&](int i, int j, const NodeSet& k) { return d_separated(g, i, j, k); });
    return detail::enumerate_markov(
        n, mc, [&](int i, int j, const NodeSet& k) { return star_separated(g, i, j, k); });
}

}  // namespace mlbn
