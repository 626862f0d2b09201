#pragma once

// Dot-product access layer.
//
// Every hull algorithm in this library reads the data exclusively through
// DotAccess, so a precomputed Gram matrix can stand in for explicit
// coordinates (kernelized runs). Explicit mode evaluates the same
// accumulation a Gram precompute would, which keeps the two modes
// numerically identical on the linear kernel.

#include <cmath>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "hullcode/point_set.hpp"
#include "hullcode/sparse_combination.hpp"

namespace hullcode {

class DotAccess {
public:
    /// View over explicit coordinates. The PointSet must outlive the access.
    static DotAccess from_points(const PointSet& ps) {
        DotAccess a;
        a.points_ = &ps;
        a.n_ = ps.size();
        return a;
    }

    /// Wrap a precomputed n-by-n Gram matrix (row-major). Requires symmetry
    /// within 1e-9 and a nonnegative diagonal.
    static DotAccess from_gram(std::vector<double> gram, int n) {
        if (n < 1 || gram.size() != static_cast<std::size_t>(n) * n)
            throw std::invalid_argument("DotAccess: bad Gram dimensions");
        for (int i = 0; i < n; ++i) {
            if (gram[static_cast<std::size_t>(i) * n + i] < 0.0)
                throw std::invalid_argument("DotAccess: negative Gram diagonal");
            for (int j = i + 1; j < n; ++j) {
                const double gij = gram[static_cast<std::size_t>(i) * n + j];
                const double gji = gram[static_cast<std::size_t>(j) * n + i];
                if (std::abs(gij - gji) > 1e-9 * std::max(1.0, std::abs(gij)))
                    throw std::invalid_argument("DotAccess: Gram matrix not symmetric");
            }
        }
        DotAccess a;
        a.gram_ = std::move(gram);
        a.n_ = n;
        return a;
    }

    int size() const { return n_; }
    bool is_gram() const { return points_ == nullptr; }

    /// The PointSet behind an explicit-coordinates access (null in Gram mode).
    const PointSet* points() const { return points_; }

    double dot(int i, int j) const {
        if (points_) {
            auto a = points_->point(i);
            auto b = points_->point(j);
            double s = 0.0;
            for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
            return s;
        }
        return gram_[static_cast<std::size_t>(i) * n_ + j];
    }

    double norm_sq(int i) const {
        if (points_) return points_->norm_sq(i);
        return gram_[static_cast<std::size_t>(i) * n_ + i];
    }

private:
    const PointSet* points_ = nullptr;
    std::vector<double> gram_;
    int n_ = 0;
};

/// Gram matrix of a point set under the linear kernel, with the same
/// accumulation order DotAccess uses in explicit mode.
inline std::vector<double> gram_from_points(const PointSet& ps) {
    const int n = ps.size();
    std::vector<double> g(static_cast<std::size_t>(n) * n);
    const DotAccess acc = DotAccess::from_points(ps);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g[static_cast<std::size_t>(i) * n + j] = acc.dot(i, j);
    return g;
}

/// A projection query: an explicit d-vector (explicit mode only), a dataset
/// point, or a convex combination of dataset points. The last two forms are
/// expressible through dot products alone and therefore kernelize.
class QueryPoint {
public:
    static QueryPoint from_vector(std::vector<double> v) {
        QueryPoint q;
        q.rep_ = std::move(v);
        return q;
    }
    static QueryPoint from_index(int i) {
        QueryPoint q;
        q.rep_ = i;
        return q;
    }
    static QueryPoint from_combination(SparseCombination c) {
        QueryPoint q;
        q.rep_ = std::move(c);
        return q;
    }

    bool is_vector() const { return std::holds_alternative<std::vector<double>>(rep_); }

    double dot_with(const DotAccess& acc, int i) const {
        if (const auto* v = std::get_if<std::vector<double>>(&rep_)) {
            const PointSet* ps = acc.points();
            if (!ps)
                throw std::invalid_argument("QueryPoint: explicit vector query needs coordinates");
            auto p = ps->point(i);
            double s = 0.0;
            for (std::size_t k = 0; k < v->size(); ++k) s += (*v)[k] * p[k];
            return s;
        }
        if (const auto* idx = std::get_if<int>(&rep_)) return acc.dot(*idx, i);
        const auto& c = std::get<SparseCombination>(rep_);
        double s = 0.0;
        for (const auto& e : c.entries()) s += e.weight * acc.dot(e.index, i);
        return s;
    }

    double norm_sq(const DotAccess& acc) const {
        if (const auto* v = std::get_if<std::vector<double>>(&rep_)) {
            double s = 0.0;
            for (double x : *v) s += x * x;
            return s;
        }
        if (const auto* idx = std::get_if<int>(&rep_)) return acc.norm_sq(*idx);
        const auto& c = std::get<SparseCombination>(rep_);
        double s = 0.0;
        for (const auto& a : c.entries())
            for (const auto& b : c.entries()) s += a.weight * b.weight * acc.dot(a.index, b.index);
        return s;
    }

private:
    std::variant<std::vector<double>, int, SparseCombination> rep_;
};

/// argmax_i <p_i, v> over the whole set, ties broken by lowest index.
inline int extreme_point(const DotAccess& acc, std::span<const double> v) {
    double vn = 0.0;
    for (double x : v) vn += x * x;
    if (vn <= 0.0)
        throw std::invalid_argument("extreme_point: zero direction");
    const QueryPoint q = QueryPoint::from_vector(std::vector<double>(v.begin(), v.end()));
    int best = 0;
    double best_score = q.dot_with(acc, 0);
    for (int i = 1; i < acc.size(); ++i) {
        const double s = q.dot_with(acc, i);
        if (s > best_score) {
            best_score = s;
            best = i;
        }
    }
    return best;
}

/// Kernel-mode variant: the direction is the formal difference head - tail
/// of two queries, so each score is <p_i, head> - <p_i, tail>. Ties break to
/// the lowest index; a degenerate (all-equal-score) direction returns 0.
inline int extreme_point(const DotAccess& acc, const QueryPoint& head, const QueryPoint& tail) {
    int best = 0;
    double best_score = head.dot_with(acc, 0) - tail.dot_with(acc, 0);
    for (int i = 1; i < acc.size(); ++i) {
        const double s = head.dot_with(acc, i) - tail.dot_with(acc, i);
        if (s > best_score) {
            best_score = s;
            best = i;
        }
    }
    return best;
}

/// diam' = 2 * max_j dist(p_0, p_j); satisfies diam <= diam' <= 2 diam.
inline double diameter_2approx(const DotAccess& acc) {
    if (acc.size() <= 1) return 0.0;
    const double n0 = acc.norm_sq(0);
    double max_sq = 0.0;
    for (int j = 1; j < acc.size(); ++j) {
        const double d2 = n0 - 2.0 * acc.dot(0, j) + acc.norm_sq(j);
        max_sq = std::max(max_sq, d2);
    }
    return 2.0 * std::sqrt(std::max(max_sq, 0.0));
}

inline double diameter_2approx(const PointSet& ps) {
    return diameter_2approx(DotAccess::from_points(ps));
}

} // namespace hullcode
