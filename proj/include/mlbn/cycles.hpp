#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "mlbn/dag.hpp"

namespace mlbn {

/// All node sets W such that s[W] is a chordless simple cycle with
/// 3 <= |W| <= max_len. Canonical-start DFS: each cycle is grown from its
/// smallest node, second node smaller than the closing node, so every cycle
/// is produced exactly once. Worst case is exponential in the graph size.
inline std::vector<std::vector<int>> induced_cycles(const Skeleton& s, int max_len) {
    if (max_len < 3) throw std::invalid_argument("induced_cycles: max_len must be >= 3");
    const int n = s.node_count();
    std::vector<std::vector<int>> out;
    std::vector<int> path;
    NodeSet on_path(n);

    // x may extend the chordless path iff its only path adjacency is the tip
    // (plus optionally the root, which closes the cycle).
    auto extend = [&](auto&& self, int root) -> void {
        int tip = path.back();
        auto candidates = s.neighbors(tip).to_vector();
        for (int x : candidates) {
            if (x <= root || on_path.contains(x)) continue;
            bool closes = s.has_edge(x, root);
            bool chorded = false;
            for (size_t t = 1; t + 1 < path.size(); ++t)
                if (s.has_edge(x, path[t])) { chorded = true; break; }
            if (chorded) continue;
            if (closes) {
                if (path.size() >= 2 && path[1] < x) {
                    std::vector<int> cycle = path;
                    cycle.push_back(x);
                    std::sort(cycle.begin(), cycle.end());
                    out.push_back(std::move(cycle));
                }
                continue;  // extending past x would leave the chord x-root
            }
            if (static_cast<int>(path.size()) + 1 >= max_len) continue;
            path.push_back(x);
            on_path.insert(x);
            self(self, root);
            path.pop_back();
            on_path.erase(x);
        }
    };

    for (int v = 0; v < n; ++v) {
        path.assign(1, v);
        on_path = NodeSet(n);
        on_path.insert(v);
        extend(extend, v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace mlbn
