#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "mlbn/node_set.hpp"

namespace mlbn {

using Edge = std::pair<int, int>;

enum class PathKind { directed, trek, general };

/// Sequence of distinct nodes, consecutive ones adjacent in the host graph.
struct Path {
    std::vector<int> nodes;
    PathKind kind = PathKind::general;

    int length() const { return static_cast<int>(nodes.size()) - 1; }
    bool operator==(const Path& o) const { return nodes == o.nodes; }
};

/// Directed acyclic graph over nodes 0..n-1. Immutable after construction;
/// the constructor rejects self-loops, duplicate edges and directed cycles.
class Dag {
public:
    Dag() = default;

    Dag(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
        if (n < 0) throw std::invalid_argument("Dag: negative node count");
        std::sort(edges_.begin(), edges_.end());
        parents_.assign(n_, NodeSet(n_));
        children_.assign(n_, NodeSet(n_));
        for (size_t i = 0; i < edges_.size(); ++i) {
            auto [u, v] = edges_[i];
            if (u < 0 || u >= n_ || v < 0 || v >= n_)
                throw std::invalid_argument("Dag: edge endpoint out of range");
            if (u == v) throw std::invalid_argument("Dag: self-loop");
            if (i > 0 && edges_[i] == edges_[i - 1])
                throw std::invalid_argument("Dag: duplicate edge");
            children_[u].insert(v);
            parents_[v].insert(u);
        }
        auto order = try_topological_order();
        if (!order) throw std::invalid_argument("Dag: directed cycle");
        topo_ = std::move(*order);
        build_reachability();
    }

    int node_count() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    bool has_edge(int u, int v) const { return check(u), check(v), children_[u].contains(v); }
    bool adjacent(int u, int v) const { return has_edge(u, v) || has_edge(v, u); }

    const NodeSet& parents(int v) const { return check(v), parents_[v]; }
    const NodeSet& children(int v) const { return check(v), children_[v]; }
    int in_degree(int v) const { return parents(v).count(); }
    int max_in_degree() const {
        int d = 0;
        for (int v = 0; v < n_; ++v) d = std::max(d, parents_[v].count());
        return d;
    }

    /// Strict ancestors: nodes with a directed path to v, excluding v.
    NodeSet ancestors(int v) const {
        check(v);
        NodeSet a = anc_[v];
        a.erase(v);
        return a;
    }

    /// Strict descendants of v, excluding v.
    NodeSet descendants(int v) const {
        check(v);
        NodeSet d(n_);
        for (int u = 0; u < n_; ++u)
            if (u != v && anc_[u].contains(v)) d.insert(u);
        return d;
    }

    /// an(K) = union of strict ancestors of members, minus K itself.
    NodeSet ancestors_of_set(const NodeSet& k) const {
        NodeSet a(n_);
        k.for_each([&](int v) { a = a | ancestors(v); });
        return a.minus(k);
    }

    /// An(K) = an(K) | K.
    NodeSet ancestral_closure(const NodeSet& k) const {
        NodeSet a(n_);
        k.for_each([&](int v) { a = a | anc_[v]; });
        return a;
    }

    NodeSet descendants_of_set(const NodeSet& k) const {
        NodeSet d(n_);
        k.for_each([&](int v) { d = d | descendants(v); });
        return d.minus(k);
    }

    NodeSet descendant_closure(const NodeSet& k) const {
        NodeSet d = descendants_of_set(k);
        return d | k;
    }

    bool reaches(int u, int v) const { return check(u), check(v), anc_[v].contains(u) || u == v; }

    /// Node ids in a fixed topological order (ties broken by id).
    const std::vector<int>& topological_order() const { return topo_; }

    /// True iff `p` is a directed path in this graph.
    bool is_directed_path(const Path& p) const {
        if (p.nodes.empty()) return false;
        NodeSet seen(n_);
        for (size_t i = 0; i < p.nodes.size(); ++i) {
            int v = p.nodes[i];
            if (v < 0 || v >= n_ || seen.contains(v)) return false;
            seen.insert(v);
            if (i > 0 && !has_edge(p.nodes[i - 1], v)) return false;
        }
        return true;
    }

    bool operator==(const Dag& o) const { return n_ == o.n_ && edges_ == o.edges_; }

private:
    void check(int v) const {
        if (v < 0 || v >= n_) throw std::invalid_argument("Dag: node out of range");
    }

    std::optional<std::vector<int>> try_topological_order() const {
        std::vector<int> indeg(n_);
        for (int v = 0; v < n_; ++v) indeg[v] = parents_[v].count();
        std::vector<int> order;
        order.reserve(n_);
        std::vector<int> ready;
        for (int v = n_ - 1; v >= 0; --v)
            if (indeg[v] == 0) ready.push_back(v);
        while (!ready.empty()) {
            // smallest id first for a stable order
            auto it = std::min_element(ready.begin(), ready.end());
            int v = *it;
            ready.erase(it);
            order.push_back(v);
            children_[v].for_each([&](int c) {
                if (--indeg[c] == 0) ready.push_back(c);
            });
        }
        if (static_cast<int>(order.size()) != n_) return std::nullopt;
        return order;
    }

    void build_reachability() {
        // anc_[v] = An({v}) as a bitset, filled along the topological order.
        anc_.assign(n_, NodeSet(n_));
        for (int v : topo_) {
            anc_[v].insert(v);
            parents_[v].for_each([&](int p) { anc_[v] = anc_[v] | anc_[p]; });
        }
    }

    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<NodeSet> parents_, children_;
    std::vector<NodeSet> anc_;  // inclusive ancestor closure per node
    std::vector<int> topo_;
};

/// Undirected skeleton: unordered pairs over nodes 0..n-1.
class Skeleton {
public:
    Skeleton() = default;

    explicit Skeleton(int n) : n_(n), adj_(n, NodeSet(n)) {}

    Skeleton(int n, const std::vector<Edge>& edges) : Skeleton(n) {
        for (auto [u, v] : edges) add_edge(u, v);
    }

    int node_count() const { return n_; }

    void add_edge(int u, int v) {
        check(u);
        check(v);
        if (u == v) throw std::invalid_argument("Skeleton: self-loop");
        adj_[u].insert(v);
        adj_[v].insert(u);
    }

    void remove_edge(int u, int v) {
        check(u);
        check(v);
        adj_[u].erase(v);
        adj_[v].erase(u);
    }

    bool has_edge(int u, int v) const { return check(u), check(v), adj_[u].contains(v); }
    const NodeSet& neighbors(int v) const { return check(v), adj_[v]; }
    int degree(int v) const { return neighbors(v).count(); }

    /// Unordered pairs {u, v} with u < v, ascending.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (int u = 0; u < n_; ++u)
            adj_[u].for_each([&](int v) {
                if (u < v) out.emplace_back(u, v);
            });
        return out;
    }

    int edge_count() const { return static_cast<int>(edges().size()); }

    bool operator==(const Skeleton& o) const { return n_ == o.n_ && adj_ == o.adj_; }
    bool operator!=(const Skeleton& o) const { return !(*this == o); }

private:
    void check(int v) const {
        if (v < 0 || v >= n_) throw std::invalid_argument("Skeleton: node out of range");
    }

    int n_ = 0;
    std::vector<NodeSet> adj_;
};

inline Skeleton skeleton(const Dag& g) {
    Skeleton s(g.node_count());
    for (auto [u, v] : g.edges()) s.add_edge(u, v);
    return s;
}

/// Triples (i, k, j) with i < j such that i-k and k-j are edges but i-j is not.
inline std::vector<std::tuple<int, int, int>> unshielded_triples(const Skeleton& s) {
    std::vector<std::tuple<int, int, int>> out;
    const int n = s.node_count();
    for (int k = 0; k < n; ++k) {
        auto nb = s.neighbors(k).to_vector();
        for (size_t a = 0; a < nb.size(); ++a)
            for (size_t b = a + 1; b < nb.size(); ++b) {
                int i = nb[a], j = nb[b];
                if (!s.has_edge(i, j)) out.emplace_back(i, k, j);
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Keeps exactly the edges with both endpoints in w; node ids are preserved.
inline Dag induced_subgraph(const Dag& g, const NodeSet& w) {
    std::vector<Edge> kept;
    for (auto [u, v] : g.edges())
        if (w.contains(u) && w.contains(v)) kept.emplace_back(u, v);
    return Dag(g.node_count(), std::move(kept));
}

inline Skeleton induced_subgraph(const Skeleton& s, const NodeSet& w) {
    Skeleton out(s.node_count());
    for (auto [u, v] : s.edges())
        if (w.contains(u) && w.contains(v)) out.add_edge(u, v);
    return out;
}

}  // namespace mlbn
