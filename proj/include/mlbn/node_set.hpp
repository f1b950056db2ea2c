#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace mlbn {

/// Set of node ids in 0..n-1, stored as a bit vector. Used for conditioning
/// sets, adjacency rows and memo keys; all operations assume both operands
/// share the same universe size.
class NodeSet {
public:
    NodeSet() = default;
    explicit NodeSet(int universe) : n_(universe), bits_((universe + 63) / 64, 0) {}

    NodeSet(int universe, std::initializer_list<int> nodes) : NodeSet(universe) {
        for (int v : nodes) insert(v);
    }

    static NodeSet from(int universe, const std::vector<int>& nodes) {
        NodeSet s(universe);
        for (int v : nodes) s.insert(v);
        return s;
    }

    int universe() const { return n_; }

    bool contains(int v) const { return (bits_[v >> 6] >> (v & 63)) & 1u; }
    void insert(int v) { bits_[v >> 6] |= uint64_t{1} << (v & 63); }
    void erase(int v) { bits_[v >> 6] &= ~(uint64_t{1} << (v & 63)); }

    int count() const {
        int c = 0;
        for (uint64_t w : bits_) c += __builtin_popcountll(w);
        return c;
    }

    bool empty() const {
        for (uint64_t w : bits_) if (w) return false;
        return true;
    }

    bool intersects(const NodeSet& o) const {
        for (size_t i = 0; i < bits_.size(); ++i)
            if (bits_[i] & o.bits_[i]) return true;
        return false;
    }

    bool is_subset_of(const NodeSet& o) const {
        for (size_t i = 0; i < bits_.size(); ++i)
            if (bits_[i] & ~o.bits_[i]) return false;
        return true;
    }

    NodeSet operator&(const NodeSet& o) const {
        NodeSet r(n_);
        for (size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] & o.bits_[i];
        return r;
    }

    NodeSet operator|(const NodeSet& o) const {
        NodeSet r(n_);
        for (size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] | o.bits_[i];
        return r;
    }

    /// Elements of *this not in o.
    NodeSet minus(const NodeSet& o) const {
        NodeSet r(n_);
        for (size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] & ~o.bits_[i];
        return r;
    }

    bool operator==(const NodeSet& o) const { return n_ == o.n_ && bits_ == o.bits_; }
    bool operator!=(const NodeSet& o) const { return !(*this == o); }

    /// Ascending node ids.
    std::vector<int> to_vector() const {
        std::vector<int> out;
        for (int w = 0; w < static_cast<int>(bits_.size()); ++w) {
            uint64_t word = bits_[w];
            while (word) {
                int b = __builtin_ctzll(word);
                out.push_back(w * 64 + b);
                word &= word - 1;
            }
        }
        return out;
    }

    template <class F>
    void for_each(F&& f) const {
        for (int w = 0; w < static_cast<int>(bits_.size()); ++w) {
            uint64_t word = bits_[w];
            while (word) {
                int b = __builtin_ctzll(word);
                f(w * 64 + b);
                word &= word - 1;
            }
        }
    }

    size_t hash() const {
        size_t h = std::hash<int>{}(n_);
        for (uint64_t w : bits_) h ^= std::hash<uint64_t>{}(w) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return h;
    }

private:
    int n_ = 0;
    std::vector<uint64_t> bits_;
};

struct NodeSetHash {
    size_t operator()(const NodeSet& s) const { return s.hash(); }
};

}  // namespace mlbn
