#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "mlbn/errors.hpp"
#include "mlbn/weighted_dag.hpp"

namespace mlbn {

/// Parameters for random weighted DAG generation.
struct GenConfig {
    int n = 0;                        // node count, >= 2
    int max_in_degree = 2;            // d >= 1
    std::optional<double> edge_prob;  // Bernoulli per candidate parent when set
    double weight_min = 0.5;          // log-uniform weight bounds, strictly positive
    double weight_max = 2.0;
    uint64_t seed = 0;
    int max_resamples = 64;  // weight redraws allowed to reach genericity
};

namespace detail {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// mt19937_64 with explicit draw logic so streams are reproducible
/// independently of the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next() { return eng_(); }

    /// Uniform integer in [0, bound), bias-free by rejection.
    int below(int bound) {
        const uint64_t span = static_cast<uint64_t>(bound);
        const uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return static_cast<int>(x % span);
    }

    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 eng_;
};

}  // namespace detail

/// Deterministic per-replicate seed derivation.
inline uint64_t derive_seed(uint64_t seed, uint64_t index) {
    return detail::splitmix64(seed ^ detail::splitmix64(index + 1));
}

/// Random weighted DAG: nodes take the topological order 0..n-1; each node
/// draws its in-degree uniformly from {0..min(d, v)} (or a Bernoulli per
/// candidate parent when edge_prob is set, capped at d), parents uniformly
/// without replacement from the earlier nodes, and weights log-uniformly.
/// Weights are redrawn over the fixed topology until the draw is generic.
inline WeightedDag random_weighted_dag(const GenConfig& cfg) {
    if (cfg.n < 2) throw std::invalid_argument("random_weighted_dag: need n >= 2");
    if (cfg.max_in_degree < 1) throw std::invalid_argument("random_weighted_dag: need d >= 1");
    if (!(cfg.weight_min > 0) || !(cfg.weight_max >= cfg.weight_min))
        throw std::invalid_argument("random_weighted_dag: bad weight bounds");
    detail::Rng rng(cfg.seed);

    std::vector<Edge> edges;
    for (int v = 1; v < cfg.n; ++v) {
        std::vector<int> pool(v);
        for (int u = 0; u < v; ++u) pool[u] = u;
        std::vector<int> parents;
        if (cfg.edge_prob) {
            for (int u = 0; u < v; ++u)
                if (rng.unit() < *cfg.edge_prob) parents.push_back(u);
            while (static_cast<int>(parents.size()) > cfg.max_in_degree)
                parents.erase(parents.begin() + rng.below(static_cast<int>(parents.size())));
        } else {
            int indeg = rng.below(std::min(cfg.max_in_degree, v) + 1);
            for (int t = 0; t < indeg; ++t) {
                int pick = t + rng.below(v - t);
                std::swap(pool[t], pool[pick]);
                parents.push_back(pool[t]);
            }
        }
        for (int u : parents) edges.emplace_back(u, v);
    }
    Dag dag(cfg.n, std::move(edges));

    const double lo = std::log(cfg.weight_min), hi = std::log(cfg.weight_max);
    for (int attempt = 0; attempt <= cfg.max_resamples; ++attempt) {
        auto logw = tropical::make_matrix<tropical::MaxPlusDouble>(
            cfg.n, tropical::MaxPlusDouble::zero());
        for (auto [u, v] : dag.edges()) logw[u][v] = lo + rng.unit() * (hi - lo);
        WeightedDag w = WeightedDag::from_log_weights(dag, std::move(logw));
        if (w.is_generic()) return w;
    }
    throw generation_error("random_weighted_dag: no generic weight draw within max_resamples");
}

/// Deterministic stream of independent models; replaying the same config
/// reproduces the identical sequence.
inline std::vector<WeightedDag> replicate_suite(const GenConfig& cfg, int replicates) {
    std::vector<WeightedDag> out;
    out.reserve(std::max(0, replicates));
    for (int r = 0; r < replicates; ++r) {
        GenConfig c = cfg;
        c.seed = derive_seed(cfg.seed, static_cast<uint64_t>(r));
        out.push_back(random_weighted_dag(c));
    }
    return out;
}

}  // namespace mlbn
