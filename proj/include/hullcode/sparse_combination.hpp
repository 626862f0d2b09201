#pragma once

#include <cmath>
#include <cstdlib>
#include <span>
#include <stdexcept>
#include <vector>

#include "hullcode/point_set.hpp"

namespace hullcode {

/// Weight below which support entries are dropped when a combination is
/// finalized.
inline constexpr double kMinCombinationWeight = 1e-14;

struct WeightedIndex {
    int index = 0;
    double weight = 0.0;
};

/// Convex combination of dataset points: nonnegative weights over distinct
/// indices, summing to one. This is both the code of an encoded point and
/// the iterate of the hull-projection loop.
class SparseCombination {
public:
    SparseCombination() = default;

    static SparseCombination unit(int index) {
        SparseCombination c;
        c.entries_.push_back({index, 1.0});
        return c;
    }

    const std::vector<WeightedIndex>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    int support_size() const { return static_cast<int>(entries_.size()); }

    double weight_sum() const {
        double s = 0.0;
        for (const auto& e : entries_) s += e.weight;
        return s;
    }

    /// Multiply all weights by f.
    void scale(double f) {
        for (auto& e : entries_) e.weight *= f;
    }

    /// Add weight w to the entry for `index`, creating it if absent.
    void add(int index, double w) {
        for (auto& e : entries_) {
            if (e.index == index) {
                e.weight += w;
                return;
            }
        }
        entries_.push_back({index, w});
    }

    /// Drop near-zero weights and rescale the rest to sum to one.
    void prune_and_renormalize(double min_weight = kMinCombinationWeight) {
        std::vector<WeightedIndex> kept;
        kept.reserve(entries_.size());
        double sum = 0.0;
        for (const auto& e : entries_) {
            if (e.weight >= min_weight) {
                kept.push_back(e);
                sum += e.weight;
            }
        }
        if (kept.empty() || sum <= 0.0) return; // degenerate; leave as-is
        for (auto& e : kept) e.weight /= sum;
        entries_ = std::move(kept);
    }

    /// Realize the combination as a d-vector (explicit coordinates only).
    std::vector<double> evaluate(const PointSet& ps) const {
        std::vector<double> out(ps.dim(), 0.0);
        for (const auto& e : entries_) {
            auto p = ps.point(e.index);
            for (int j = 0; j < ps.dim(); ++j) out[j] += e.weight * p[j];
        }
        return out;
    }

    /// Throws unless weights are nonnegative (tolerance -1e-12), sum to one
    /// within 1e-9, and indices are distinct and inside [0, n).
    void validate(int n) const {
        if (entries_.empty())
            throw std::invalid_argument("SparseCombination: empty");
        double sum = 0.0;
        for (const auto& e : entries_) {
            if (e.index < 0 || e.index >= n)
                throw std::invalid_argument("SparseCombination: index out of range");
            if (e.weight < -1e-12)
                throw std::invalid_argument("SparseCombination: negative weight");
            sum += e.weight;
        }
        for (std::size_t a = 0; a < entries_.size(); ++a)
            for (std::size_t b = a + 1; b < entries_.size(); ++b)
                if (entries_[a].index == entries_[b].index)
                    throw std::invalid_argument("SparseCombination: duplicate index");
        if (std::abs(sum - 1.0) > 1e-9)
            throw std::invalid_argument("SparseCombination: weights do not sum to 1");
    }

private:
    std::vector<WeightedIndex> entries_;
};

} // namespace hullcode
