#pragma once

#include <vector>

#include "mlbn/errors.hpp"
#include "mlbn/weighted_dag.hpp"

namespace mlbn {

/// Result of a weighted transitive reduction: the reduced model plus the
/// edges of the input that were cut. Every kept edge is itself the unique
/// critical path between its endpoints; every removed edge has a strictly
/// heavier bypass.
struct ReducedModel {
    WeightedDag reduced;
    std::vector<Edge> removed_edges;
};

/// Keep edge u -> v iff the critical u -> v path is the edge itself. Weights
/// of kept edges are copied; the Kleene stars of input and output agree.
inline ReducedModel weighted_transitive_reduction(const WeightedDag& w) {
    if (!w.is_generic())
        throw genericity_error("weighted_transitive_reduction: weights are not generic");
    const int n = w.node_count();
    std::vector<std::vector<double>> logw(
        n, std::vector<double>(n, tropical::MaxPlusDouble::zero()));
    std::vector<Edge> kept, removed;
    for (auto [u, v] : w.dag().edges()) {
        if (w.critical_intermediates(u, v).empty()) {
            kept.emplace_back(u, v);
            logw[u][v] = w.log_weight(u, v);
        } else {
            removed.emplace_back(u, v);
        }
    }
    return ReducedModel{
        WeightedDag::from_log_weights(Dag(n, std::move(kept)), std::move(logw)),
        std::move(removed)};
}

}  // namespace mlbn
