#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "mlbn/dag.hpp"
#include "mlbn/errors.hpp"
#include "mlbn/tropical.hpp"

namespace mlbn {

using WeightedEdge = std::tuple<int, int, double>;

/// DAG with strictly positive edge weights. Weights are kept in the log
/// domain (max-plus) so long products stay well-conditioned; the Kleene star,
/// critical-path predecessors and the runner-up weights needed for the
/// genericity check are computed once at construction. Immutable afterwards.
class WeightedDag {
public:
    WeightedDag() = default;

    /// Weights given in the original (max-times) domain.
    WeightedDag(int n, const std::vector<WeightedEdge>& edges) {
        std::vector<Edge> es;
        es.reserve(edges.size());
        for (auto& [u, v, w] : edges) es.emplace_back(u, v);
        Dag dag(n, std::move(es));
        auto logw = tropical::make_matrix<tropical::MaxPlusDouble>(n, neg_inf());
        for (auto& [u, v, w] : edges) {
            if (!(w > 0)) throw std::invalid_argument("WeightedDag: weights must be positive");
            logw[u][v] = std::log(w);
        }
        init(std::move(dag), std::move(logw));
    }

    static WeightedDag from_log_weights(Dag dag, std::vector<std::vector<double>> log_weights) {
        WeightedDag w;
        w.init(std::move(dag), std::move(log_weights));
        return w;
    }

    const Dag& dag() const { return dag_; }
    int node_count() const { return dag_.node_count(); }

    bool has_edge(int u, int v) const { return dag_.has_edge(u, v); }
    double log_weight(int u, int v) const { return log_w_[u][v]; }
    double weight(int u, int v) const { return std::exp(log_w_[u][v]); }

    /// c*[i][j] in the max-times domain: 1 on the diagonal, 0 if unreachable.
    double kleene(int i, int j) const { return std::exp(star_.best[i][j]); }
    double kleene_log(int i, int j) const { return star_.best[i][j]; }
    bool reaches(int i, int j) const { return star_.best[i][j] != neg_inf(); }

    std::vector<std::vector<double>> kleene_star() const {
        const int n = node_count();
        std::vector<std::vector<double>> out(n, std::vector<double>(n, 0.0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out[i][j] = std::exp(star_.best[i][j]);
        return out;
    }

    /// Two distinct i->j paths attain the maximum weight within tolerance.
    bool tied(int i, int j) const {
        return star_.second[i][j] != neg_inf() &&
               tropical::MaxPlusDouble::tie(star_.best[i][j], star_.second[i][j]);
    }

    bool is_generic() const { return generic_; }

    /// Product of edge weights along a directed path; the empty product is 1.
    double path_weight(const Path& p) const { return std::exp(path_log_weight(p)); }

    double path_log_weight(const Path& p) const {
        if (!dag_.is_directed_path(p)) throw std::invalid_argument("path_weight: not a directed path");
        double s = 0.0;
        for (size_t t = 1; t < p.nodes.size(); ++t) s += log_w_[p.nodes[t - 1]][p.nodes[t]];
        return s;
    }

    /// The unique weight-maximal directed i->j path; nullopt when j is not
    /// reachable from i. Throws genericity_error when two paths tie for the
    /// pair within tolerance.
    std::optional<Path> critical_path(int i, int j) const {
        check(i), check(j);
        if (star_.best[i][j] == neg_inf()) return std::nullopt;
        if (tied(i, j))
            throw genericity_error("critical_path: two paths tie for (" + std::to_string(i) +
                                   "," + std::to_string(j) + ")");
        Path p;
        p.kind = PathKind::directed;
        for (int v = j; v != i; v = star_.parent[i][v]) p.nodes.push_back(v);
        p.nodes.push_back(i);
        std::reverse(p.nodes.begin(), p.nodes.end());
        return p;
    }

    /// Nodes strictly between i and j on the critical i->j path; empty when
    /// i == j or j is unreachable. Ties are resolved arbitrarily here; callers
    /// needing uniqueness check is_generic()/tied() first.
    const NodeSet& critical_intermediates(int i, int j) const {
        return check(i), check(j), intermediates_[i][j];
    }

    bool operator==(const WeightedDag& o) const {
        return dag_ == o.dag_ && log_w_ == o.log_w_;
    }

private:
    static constexpr double neg_inf() { return tropical::MaxPlusDouble::zero(); }

    void check(int v) const {
        if (v < 0 || v >= node_count()) throw std::invalid_argument("WeightedDag: node out of range");
    }

    void init(Dag dag, std::vector<std::vector<double>> logw) {
        const int n = dag.node_count();
        if (static_cast<int>(logw.size()) != n)
            throw std::invalid_argument("WeightedDag: weight matrix size mismatch");
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) {
                const bool present = logw[u][v] != neg_inf();
                if (present != dag.has_edge(u, v))
                    throw std::invalid_argument("WeightedDag: weight support must equal the edge set");
            }
        dag_ = std::move(dag);
        log_w_ = std::move(logw);
        star_ = tropical::kleene_star_dp<tropical::MaxPlusDouble>(dag_, log_w_);

        generic_ = true;
        for (int i = 0; i < n && generic_; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j && tied(i, j)) { generic_ = false; break; }

        intermediates_.assign(n, std::vector<NodeSet>(n, NodeSet(n)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j || star_.best[i][j] == neg_inf()) continue;
                for (int v = star_.parent[i][j]; v != i; v = star_.parent[i][v])
                    intermediates_[i][j].insert(v);
            }
    }

    Dag dag_;
    std::vector<std::vector<double>> log_w_;
    tropical::StarResult<tropical::MaxPlusDouble> star_;
    std::vector<std::vector<NodeSet>> intermediates_;
    bool generic_ = true;
};

}  // namespace mlbn
