#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <map>
#include <optional>
#include <vector>

#include "mlbn/cycles.hpp"
#include "mlbn/dag.hpp"
#include "mlbn/errors.hpp"
#include "mlbn/oracle.hpp"
#include "mlbn/pdag.hpp"

namespace mlbn {

/// Conditioning set recorded when the skeleton phase deleted an edge.
class SepsetTable {
public:
    void set(int i, int j, const NodeSet& k) {
        table_[normalize(i, j)] = k.to_vector();
    }

    std::optional<std::vector<int>> get(int i, int j) const {
        auto it = table_.find(normalize(i, j));
        if (it == table_.end()) return std::nullopt;
        return it->second;
    }

    bool separator_contains(int i, int j, int v) const {
        auto it = table_.find(normalize(i, j));
        return it != table_.end() &&
               std::binary_search(it->second.begin(), it->second.end(), v);
    }

    const std::map<Edge, std::vector<int>>& entries() const { return table_; }

private:
    static Edge normalize(int i, int j) { return {std::min(i, j), std::max(i, j)}; }
    std::map<Edge, std::vector<int>> table_;
};

namespace detail {

/// Visits the size-`size` subsets of `items` in colex order (ascending
/// characteristic bitmask). Stops early when f returns true.
template <class F>
bool for_each_subset_colex(int universe, const std::vector<int>& items, int size, F&& f) {
    const int m = static_cast<int>(items.size());
    if (size > m) return false;
    std::vector<int> idx(size);
    for (int t = 0; t < size; ++t) idx[t] = t;
    while (true) {
        NodeSet k(universe);
        for (int t : idx) k.insert(items[t]);
        if (f(k)) return true;
        int t = 0;
        while (t < size) {
            int limit = (t + 1 < size) ? idx[t + 1] : m;
            if (idx[t] + 1 < limit) break;
            ++t;
        }
        if (t == size) return false;
        ++idx[t];
        for (int s = 0; s < t; ++s) idx[s] = s;
    }
}

}  // namespace detail

struct SkeletonResult {
    Skeleton skeleton;
    SepsetTable sepsets;
    int max_cond_queried = -1;  // largest |K| actually sent to the oracle
};

/// Skeleton learning step of PC. Starts from the complete graph; for growing
/// l, tries every K of size l drawn from the joint neighborhood of each
/// remaining edge, restricted to K within one endpoint's neighborhood, and
/// deletes the edge on the first separating K. Stops once l exceeds the
/// requested cap, or the largest joint neighborhood when no cap is given.
/// Edge order and subset order are deterministic.
inline SkeletonResult pc_skeleton(const SeparationOracle& oracle, int n,
                                  std::optional<int> max_cond = std::nullopt) {
    if (n != oracle.node_count())
        throw std::invalid_argument("pc_skeleton: node count does not match the oracle");
    SkeletonResult r{Skeleton(n), {}, -1};
    auto& g = r.skeleton;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);

    for (int l = 0;; ++l) {
        auto edges = g.edges();
        if (edges.empty()) break;
        int bound = 0;
        for (auto [i, j] : edges) {
            NodeSet cand = g.neighbors(i) | g.neighbors(j);
            cand.erase(i);
            cand.erase(j);
            bound = std::max(bound, cand.count());
        }
        if (l > bound) break;
        if (max_cond && l > *max_cond) break;

        for (auto [i, j] : edges) {
            if (!g.has_edge(i, j)) continue;
            NodeSet cand = g.neighbors(i) | g.neighbors(j);
            cand.erase(i);
            cand.erase(j);
            detail::for_each_subset_colex(n, cand.to_vector(), l, [&](const NodeSet& k) {
                if (!(k.is_subset_of(g.neighbors(i)) || k.is_subset_of(g.neighbors(j))))
                    return false;
                r.max_cond_queried = std::max(r.max_cond_queried, l);
                if (!oracle.query(i, j, k)) return false;
                g.remove_edge(i, j);
                r.sepsets.set(i, j, k);
                return true;
            });
        }
    }
    return r;
}

/// Collider detection over the recovered skeleton. A triple (i, k, j) is
/// oriented i -> k <- j iff no conditioning set S with k in S, drawn from the
/// joint neighborhood of i and j, separates i and j. A recorded sepset that
/// contains k already witnesses "some separating set contains k" and skips
/// the search.
inline Pdag orient_colliders(const Skeleton& skel, const SeparationOracle& oracle,
                             const SepsetTable& sepsets) {
    const int n = skel.node_count();
    Pdag p(n);
    for (auto [u, v] : skel.edges()) p.add_undirected(u, v);

    for (auto [i, k, j] : unshielded_triples(skel)) {
        bool separator_with_k = sepsets.separator_contains(i, j, k);
        if (!separator_with_k) {
            NodeSet cand = skel.neighbors(i) | skel.neighbors(j);
            cand.erase(i);
            cand.erase(j);
            cand.erase(k);
            auto rest = cand.to_vector();
            for (int size = 0; size <= static_cast<int>(rest.size()) && !separator_with_k;
                 ++size) {
                separator_with_k =
                    detail::for_each_subset_colex(n, rest, size, [&](const NodeSet& t) {
                        NodeSet s = t;
                        s.insert(k);
                        return oracle.query(i, j, s);
                    });
            }
        }
        if (!separator_with_k) {
            p.orient(i, k);
            p.orient(j, k);
        }
    }
    return p;
}

namespace detail {

inline bool is_detected_collider(const Pdag& p, int a, int mid, int b) {
    return p.has_directed(a, mid) && p.has_directed(b, mid) && !p.adjacent(a, b);
}

/// A counterexample to the orientability condition: a simple skeleton path
/// from w to k that leaves W at least once and carries no detected collider.
inline bool collider_free_outside_path(const Skeleton& skel, const Pdag& p, const NodeSet& w_set,
                                       int w, int k) {
    const int n = skel.node_count();
    std::vector<int> path{w};
    NodeSet on_path(n);
    on_path.insert(w);
    auto dfs = [&](auto&& self, bool outside) -> bool {
        int u = path.back();
        auto nexts = skel.neighbors(u).to_vector();
        for (int x : nexts) {
            if (on_path.contains(x)) continue;
            if (path.size() >= 2 &&
                is_detected_collider(p, path[path.size() - 2], u, x))
                continue;  // any extension keeps this collider
            if (x == k) {
                if (outside) return true;
                continue;
            }
            path.push_back(x);
            on_path.insert(x);
            bool found = self(self, outside || !w_set.contains(x));
            path.pop_back();
            on_path.erase(x);
            if (found) return true;
        }
        return false;
    };
    return dfs(dfs, false);
}

}  // namespace detail

/// Induced cycle whose single unshielded collider makes it a candidate for
/// source detection; k1 < k2 are the collider parents, k the sink.
struct OrientableCycle {
    std::vector<int> cycle;  // sorted
    int k1 = -1, k = -1, k2 = -1;

    bool operator==(const OrientableCycle& o) const {
        return cycle == o.cycle && k1 == o.k1 && k == o.k && k2 == o.k2;
    }
};

/// Chordless cycles of the skeleton that contain exactly one detected
/// unshielded collider and pass the external-path condition: every skeleton
/// path from a cycle node to the sink that leaves the cycle carries a
/// detected collider. Exponential in the worst case.
inline std::vector<OrientableCycle> find_orientable_cycles(const Pdag& p, int max_len) {
    const int n = p.node_count();
    Skeleton skel = p.skeleton();

    std::vector<std::tuple<int, int, int>> colliders;
    for (auto [i, k, j] : unshielded_triples(skel))
        if (p.has_directed(i, k) && p.has_directed(j, k)) colliders.emplace_back(i, k, j);

    std::vector<OrientableCycle> out;
    for (auto& cycle : induced_cycles(skel, std::max(3, max_len))) {
        if (cycle.size() < 4) continue;
        NodeSet w_set = NodeSet::from(n, cycle);
        std::optional<std::tuple<int, int, int>> unique_collider;
        bool multiple = false;
        for (auto& [a, k, b] : colliders)
            if (w_set.contains(a) && w_set.contains(k) && w_set.contains(b)) {
                if (unique_collider) multiple = true;
                unique_collider = {a, k, b};
            }
        if (multiple || !unique_collider) continue;
        auto [k1, k, k2] = *unique_collider;

        bool orientable = true;
        for (int w : cycle) {
            if (w == k) continue;
            if (detail::collider_free_outside_path(skel, p, w_set, w, k)) {
                orientable = false;
                break;
            }
        }
        if (orientable) out.push_back(OrientableCycle{cycle, k1, k, k2});
    }
    std::sort(out.begin(), out.end(), [](const OrientableCycle& a, const OrientableCycle& b) {
        return std::tie(a.cycle, a.k) < std::tie(b.cycle, b.k);
    });
    return out;
}

struct CycleOrientation {
    Pdag pdag;
    std::optional<int> source;  // empty when only possible sources were marked
};

namespace detail {

/// Nodes outside W from which W can be reached along edges traversed toward
/// it (directed edges forward, undirected edges either way). Superset of the
/// ancestors of W in any consistent orientation.
inline NodeSet reaching_pool(const Pdag& p, const NodeSet& w_set) {
    const int n = p.node_count();
    NodeSet visited = w_set;
    std::vector<int> stack = w_set.to_vector();
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        NodeSet preds = p.directed_parents(v) | p.undirected_neighbors(v);
        preds.for_each([&](int u) {
            if (visited.contains(u)) return;
            visited.insert(u);
            stack.push_back(u);
        });
    }
    return visited.minus(w_set);
}

/// Candidate conditioning sets K ⊆ V\W for cycle orientation: the whole
/// reaching pool first, then its subsets by size, then subsets of V\W,
/// both capped.
inline std::vector<NodeSet> cycle_conditioning_sets(const Pdag& p, const NodeSet& w_set,
                                                    int cap) {
    const int n = p.node_count();
    std::vector<NodeSet> out;
    auto push_unique = [&](const NodeSet& k) {
        if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
    };
    NodeSet pool = reaching_pool(p, w_set);
    push_unique(pool);
    auto pool_v = pool.to_vector();
    for (int size = 0; size <= std::min<int>(cap, pool_v.size()); ++size)
        for_each_subset_colex(n, pool_v, size, [&](const NodeSet& k) {
            push_unique(k);
            return false;
        });
    NodeSet outside(n);
    for (int v = 0; v < n; ++v)
        if (!w_set.contains(v)) outside.insert(v);
    auto outside_v = outside.to_vector();
    for (int size = 0; size <= std::min<int>(cap, outside_v.size()); ++size)
        for_each_subset_colex(n, outside_v, size, [&](const NodeSet& k) {
            push_unique(k);
            return false;
        });
    return out;
}

}  // namespace detail

/// Source detection for one orientable cycle. For each candidate i the count
/// of cycle nodes j witnessing a separation of i from the sink (conditioning
/// on j plus some set outside the cycle) is computed; a cycle whose counts
/// are all zero has its collider parents marked as possible sources, anything
/// else must have a unique maximizer, the source, from which both arcs are
/// oriented toward the sink. A tied maximum signals violated premises.
inline CycleOrientation orient_cycle(Pdag p, const OrientableCycle& oc,
                                     const SeparationOracle& oracle, int cond_cap = 3) {
    const int n = p.node_count();
    NodeSet w_set = NodeSet::from(n, oc.cycle);
    Skeleton skel = p.skeleton();

    // ring order starting at the sink: k, k1, ..., k2
    std::vector<int> ring{oc.k, oc.k1};
    while (true) {
        int u = ring.back(), prev = ring[ring.size() - 2];
        int next = -1;
        (skel.neighbors(u) & w_set).for_each([&](int x) {
            if (x != prev && x != oc.k) next = (next == -1 ? x : next);
        });
        if (next == -1) break;  // reached k2, whose in-cycle neighbors are prev and k
        ring.push_back(next);
    }
    if (ring.back() != oc.k2) ring.push_back(oc.k2);

    auto cond_sets = detail::cycle_conditioning_sets(p, w_set, cond_cap);

    int best_count = 0, best_node = -1;
    bool tie = false;
    for (int i : oc.cycle) {
        if (i == oc.k1 || i == oc.k || i == oc.k2) continue;
        int count = 0;
        for (int j : oc.cycle) {
            if (j == i || j == oc.k) continue;
            for (const auto& base : cond_sets) {
                NodeSet k = base;
                k.insert(j);
                if (oracle.query(i, oc.k, k)) {
                    ++count;
                    break;
                }
            }
        }
        if (count > best_count) {
            best_count = count;
            best_node = i;
            tie = false;
        } else if (count == best_count && count > 0) {
            tie = true;
        }
    }

    if (best_count == 0) {
        p.annotate_possible_sources(
            PossibleSources{oc.cycle, {std::min(oc.k1, oc.k2), std::max(oc.k1, oc.k2)}});
        return CycleOrientation{std::move(p), std::nullopt};
    }
    if (tie)
        throw inconsistency_error("orient_cycle: two nodes tie as the source", oc.cycle);

    // orient both arcs from the source around to the sink
    int pos = static_cast<int>(std::find(ring.begin(), ring.end(), best_node) - ring.begin());
    const int len = static_cast<int>(ring.size());
    for (int t = pos; ring[t % len] != oc.k; ++t) {
        int u = ring[t % len], v = ring[(t + 1) % len];
        if (!p.has_directed(u, v)) p.orient(u, v);
    }
    for (int t = pos + len; ring[t % len] != oc.k; --t) {
        int u = ring[t % len], v = ring[(t - 1 + len) % len];
        if (!p.has_directed(u, v)) p.orient(u, v);
    }
    return CycleOrientation{std::move(p), best_node};
}

/// Closure under the orientation rules that need no oracle input: directed
/// chains onto an unshielded neighbor, shielded directed chains, and the
/// double-collider diamond. Never flips an arc, never creates a cycle or a
/// new unshielded collider.
inline Pdag meek_rules(Pdag p) {
    const int n = p.node_count();
    bool changed = true;
    while (changed) {
        changed = false;
        // i -> k - j with i, j non-adjacent: orient k -> j
        for (int k = 0; k < n; ++k) {
            auto parents = p.directed_parents(k).to_vector();
            auto und = p.undirected_neighbors(k).to_vector();
            for (int i : parents)
                for (int j : und)
                    if (j != i && !p.adjacent(i, j)) {
                        p.orient(k, j);
                        changed = true;
                    }
        }
        // i -> k -> j with i - j undirected: orient i -> j
        for (int i = 0; i < n; ++i) {
            auto und = p.undirected_neighbors(i).to_vector();
            for (int j : und) {
                bool chain = false;
                p.directed_children(i).for_each([&](int k) {
                    if (p.has_directed(k, j)) chain = true;
                });
                if (chain) {
                    p.orient(i, j);
                    changed = true;
                }
            }
        }
        // i - l undirected with i - j, i - k undirected, j -> l <- k,
        // j and k non-adjacent: orient i -> l
        for (int i = 0; i < n; ++i) {
            auto und = p.undirected_neighbors(i).to_vector();
            for (int l : und) {
                auto into_l = (p.directed_parents(l) & p.undirected_neighbors(i)).to_vector();
                bool fires = false;
                for (size_t a = 0; a < into_l.size() && !fires; ++a)
                    for (size_t b = a + 1; b < into_l.size() && !fires; ++b)
                        if (!p.adjacent(into_l[a], into_l[b])) fires = true;
                if (fires) {
                    p.orient(i, l);
                    changed = true;
                }
            }
        }
    }
    return p;
}

struct DiscoveryOptions {
    std::optional<bool> cycles;        // default: on for n <= 20
    std::optional<int> max_cycle_len;  // default: n
    std::optional<int> max_cond;       // default: neighborhood-driven
    int cycle_cond_cap = 3;            // subset size cap for cycle conditioning fallback
};

struct DiscoveryStats {
    uint64_t oracle_queries = 0;  // distinct oracle queries over the whole run
    uint64_t cache_hits = 0;
    int max_cond_queried = -1;  // skeleton phase only
    double wall_ms = 0;
};

struct OrientedCycleRecord {
    std::vector<int> cycle;
    std::optional<int> source;            // set when the source was identified
    std::array<int, 2> possible{-1, -1};  // set when only candidates could be marked
};

struct DiscoveryResult {
    Pdag cpdag;
    SepsetTable sepsets;
    std::vector<OrientedCycleRecord> oriented_cycles;
    DiscoveryStats stats;
};

/// Full pipeline: skeleton retrieval, collider detection, optional induced
/// cycle orientation, then rule closure.
inline DiscoveryResult pcstar(const SeparationOracle& oracle, int n,
                              const DiscoveryOptions& opt = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto s0 = oracle.stats();

    auto skel_res = pc_skeleton(oracle, n, opt.max_cond);
    Pdag p = orient_colliders(skel_res.skeleton, oracle, skel_res.sepsets);

    DiscoveryResult r;
    r.sepsets = std::move(skel_res.sepsets);

    const bool cycles_on = opt.cycles.value_or(n <= 20);
    if (cycles_on) {
        for (const auto& oc : find_orientable_cycles(p, opt.max_cycle_len.value_or(n))) {
            auto co = orient_cycle(std::move(p), oc, oracle, opt.cycle_cond_cap);
            p = std::move(co.pdag);
            OrientedCycleRecord rec;
            rec.cycle = oc.cycle;
            if (co.source)
                rec.source = co.source;
            else
                rec.possible = {std::min(oc.k1, oc.k2), std::max(oc.k1, oc.k2)};
            r.oriented_cycles.push_back(std::move(rec));
        }
    }
    r.cpdag = meek_rules(std::move(p));

    const auto s1 = oracle.stats();
    r.stats.oracle_queries = s1.distinct_queries - s0.distinct_queries;
    r.stats.cache_hits = s1.cache_hits - s0.cache_hits;
    r.stats.max_cond_queried = skel_res.max_cond_queried;
    r.stats.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace mlbn
