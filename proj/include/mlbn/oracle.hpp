#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "mlbn/dag.hpp"
#include "mlbn/separation.hpp"
#include "mlbn/weighted_dag.hpp"

namespace mlbn {

enum class OracleKind { d, star, cstar };

inline const char* to_string(OracleKind k) {
    switch (k) {
        case OracleKind::d: return "d";
        case OracleKind::star: return "star";
        case OracleKind::cstar: return "cstar";
    }
    return "?";
}

/// Conditional-independence oracle over a hidden true model. Queries are pure
/// functions of (kind, model, i, j, K); answers are memoized and the memo is
/// internally synchronized, so concurrent callers need no external locking.
class SeparationOracle {
public:
    static SeparationOracle d_oracle(Dag g) { return SeparationOracle(OracleKind::d, std::move(g)); }
    static SeparationOracle star_oracle(Dag g) {
        return SeparationOracle(OracleKind::star, std::move(g));
    }
    static SeparationOracle cstar_oracle(WeightedDag w) {
        return SeparationOracle(OracleKind::cstar, std::move(w));
    }

    OracleKind kind() const { return kind_; }

    int node_count() const { return dag_ ? dag_->node_count() : wdag_->node_count(); }

    /// True iff i and j are separated given k under this oracle's criterion.
    bool query(int i, int j, const NodeSet& k) const {
        if (i > j) std::swap(i, j);
        detail::check_separation_args(node_count(), i, j, k);
        Key key{i, j, k};
        std::lock_guard<std::mutex> lock(mu_);
        auto it = memo_.find(key);
        if (it != memo_.end()) {
            ++cache_hits_;
            return it->second;
        }
        bool ans = answer(i, j, k);
        memo_.emplace(std::move(key), ans);
        ++distinct_queries_;
        return ans;
    }

    struct Stats {
        uint64_t distinct_queries = 0;  // logically distinct triples answered
        uint64_t cache_hits = 0;
    };

    Stats stats() const {
        std::lock_guard<std::mutex> lock(mu_);
        return Stats{distinct_queries_, cache_hits_};
    }

    // Pinned in place: the memo mutex is not movable and CstarContext points
    // at the stored model. Factory returns rely on guaranteed elision.
    SeparationOracle(const SeparationOracle&) = delete;
    SeparationOracle& operator=(const SeparationOracle&) = delete;

private:
    SeparationOracle(OracleKind kind, Dag g) : kind_(kind), dag_(std::move(g)) {}
    SeparationOracle(OracleKind kind, WeightedDag w) : kind_(kind), wdag_(std::move(w)) {
        ctx_.emplace(*wdag_);
    }

    struct Key {
        int i, j;
        NodeSet k;
        bool operator==(const Key& o) const { return i == o.i && j == o.j && k == o.k; }
    };
    struct KeyHash {
        size_t operator()(const Key& q) const {
            size_t h = q.k.hash();
            h ^= std::hash<int>{}(q.i) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            h ^= std::hash<int>{}(q.j) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            return h;
        }
    };

    bool answer(int i, int j, const NodeSet& k) const {
        switch (kind_) {
            case OracleKind::d: return d_separated(*dag_, i, j, k);
            case OracleKind::star: return star_separated(*dag_, i, j, k);
            case OracleKind::cstar: return ctx_->separated(i, j, k);
        }
        throw std::logic_error("oracle: unknown kind");
    }

    OracleKind kind_;
    std::optional<Dag> dag_;
    std::optional<WeightedDag> wdag_;
    std::optional<CstarContext> ctx_;  // cstar only; shares the oracle mutex

    mutable std::mutex mu_;
    mutable std::unordered_map<Key, bool, KeyHash> memo_;
    mutable uint64_t distinct_queries_ = 0;
    mutable uint64_t cache_hits_ = 0;
};

}  // namespace mlbn
