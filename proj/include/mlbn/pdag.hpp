#pragma once

#include <algorithm>
#include <array>
#include <stdexcept>
#include <vector>

#include "mlbn/dag.hpp"
#include "mlbn/errors.hpp"
#include "mlbn/node_set.hpp"

namespace mlbn {

/// Ambiguity annotation: the cycle `cycle` has exactly one unshielded
/// collider but its source cannot be identified; it is one of `candidates`.
struct PossibleSources {
    std::vector<int> cycle;        // sorted node set of the induced cycle
    std::array<int, 2> candidates;  // the two collider parents

    bool operator==(const PossibleSources& o) const {
        return cycle == o.cycle && candidates == o.candidates;
    }
};

/// Partially directed graph (CPDAG plus possible-source annotations).
/// Directed and undirected edge sets are disjoint as unordered pairs and the
/// directed part stays acyclic; orientation helpers enforce both.
class Pdag {
public:
    Pdag() = default;
    explicit Pdag(int n) : n_(n), dir_out_(n, NodeSet(n)), dir_in_(n, NodeSet(n)), und_(n, NodeSet(n)) {}

    int node_count() const { return n_; }

    void add_undirected(int u, int v) {
        check(u), check(v);
        if (u == v) throw std::invalid_argument("Pdag: self-loop");
        if (has_directed(u, v) || has_directed(v, u))
            throw std::invalid_argument("Pdag: edge already directed");
        und_[u].insert(v);
        und_[v].insert(u);
    }

    void add_directed(int u, int v) {
        check(u), check(v);
        if (u == v) throw std::invalid_argument("Pdag: self-loop");
        if (has_undirected(u, v)) throw std::invalid_argument("Pdag: edge already undirected");
        if (has_directed(v, u)) throw inconsistency_error("Pdag: conflicting edge direction", {u, v});
        dir_out_[u].insert(v);
        dir_in_[v].insert(u);
        if (creates_directed_cycle()) {
            dir_out_[u].erase(v);
            dir_in_[v].erase(u);
            throw inconsistency_error("Pdag: direction would close a directed cycle", {u, v});
        }
    }

    /// Turn the undirected edge u-v into u -> v.
    void orient(int u, int v) {
        if (has_directed(u, v)) return;
        if (!has_undirected(u, v)) {
            if (has_directed(v, u))
                throw inconsistency_error("Pdag: edge already oriented the other way", {u, v});
            throw std::invalid_argument("Pdag: no such undirected edge");
        }
        und_[u].erase(v);
        und_[v].erase(u);
        add_directed(u, v);
    }

    bool has_directed(int u, int v) const { return check(u), check(v), dir_out_[u].contains(v); }
    bool has_undirected(int u, int v) const { return check(u), check(v), und_[u].contains(v); }
    bool adjacent(int u, int v) const {
        return has_undirected(u, v) || has_directed(u, v) || has_directed(v, u);
    }

    const NodeSet& directed_children(int v) const { return check(v), dir_out_[v]; }
    const NodeSet& directed_parents(int v) const { return check(v), dir_in_[v]; }
    const NodeSet& undirected_neighbors(int v) const { return check(v), und_[v]; }
    NodeSet adjacent_nodes(int v) const { return (dir_out_[v] | dir_in_[v]) | und_[v]; }

    std::vector<Edge> directed_edges() const {
        std::vector<Edge> out;
        for (int u = 0; u < n_; ++u)
            dir_out_[u].for_each([&](int v) { out.emplace_back(u, v); });
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Unordered pairs with u < v.
    std::vector<Edge> undirected_edges() const {
        std::vector<Edge> out;
        for (int u = 0; u < n_; ++u)
            und_[u].for_each([&](int v) {
                if (u < v) out.emplace_back(u, v);
            });
        return out;
    }

    Skeleton skeleton() const {
        Skeleton s(n_);
        for (auto [u, v] : directed_edges()) s.add_edge(u, v);
        for (auto [u, v] : undirected_edges()) s.add_edge(u, v);
        return s;
    }

    const std::vector<PossibleSources>& possible_sources() const { return possible_sources_; }
    void annotate_possible_sources(PossibleSources ps) { possible_sources_.push_back(std::move(ps)); }

    bool operator==(const Pdag& o) const {
        return n_ == o.n_ && dir_out_ == o.dir_out_ && und_ == o.und_ &&
               possible_sources_ == o.possible_sources_;
    }
    bool operator!=(const Pdag& o) const { return !(*this == o); }

private:
    void check(int v) const {
        if (v < 0 || v >= n_) throw std::invalid_argument("Pdag: node out of range");
    }

    bool creates_directed_cycle() const {
        // Kahn over the directed part only.
        std::vector<int> indeg(n_);
        for (int v = 0; v < n_; ++v) indeg[v] = dir_in_[v].count();
        std::vector<int> stack;
        for (int v = 0; v < n_; ++v)
            if (indeg[v] == 0) stack.push_back(v);
        int seen = 0;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            ++seen;
            dir_out_[v].for_each([&](int c) {
                if (--indeg[c] == 0) stack.push_back(c);
            });
        }
        return seen != n_;
    }

    int n_ = 0;
    std::vector<NodeSet> dir_out_, dir_in_, und_;
    std::vector<PossibleSources> possible_sources_;
};

inline Pdag induced_subgraph(const Pdag& p, const NodeSet& w) {
    Pdag out(p.node_count());
    for (auto [u, v] : p.undirected_edges())
        if (w.contains(u) && w.contains(v)) out.add_undirected(u, v);
    for (auto [u, v] : p.directed_edges())
        if (w.contains(u) && w.contains(v)) out.add_directed(u, v);
    return out;
}

}  // namespace mlbn
