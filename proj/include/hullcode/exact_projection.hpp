#pragma once

// Exact nearest point in a convex hull, by face enumeration.
//
// The minimizer of ||q - x|| over conv(P) lies on a face whose vertex set is
// affinely independent, so it is found by projecting q onto the affine hull
// of every subset of at most d+1 points and keeping the candidates whose
// barycentric coordinates are nonnegative. Exponential in min(d+1, n); meant
// for verification at small sizes, never for the main algorithm path.

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "hullcode/point_set.hpp"
#include "hullcode/sparse_combination.hpp"

namespace hullcode {

struct ExactProjection {
    std::vector<double> point;     // nearest point of conv(P) to q
    double distance = 0.0;
    SparseCombination combination; // barycentric witness over dataset indices
};

namespace detail {

// Solve the (s+1)x(s+1) KKT system for projecting q onto the affine hull of
// a subset: [G 1; 1^T 0] [lambda; mu] = [b; 1]. Returns false when singular.
inline bool solve_affine_kkt(std::vector<double>& m, std::vector<double>& rhs, int k) {
    for (int col = 0; col < k; ++col) {
        int piv = col;
        double best = std::abs(m[static_cast<std::size_t>(col) * k + col]);
        for (int r = col + 1; r < k; ++r) {
            const double v = std::abs(m[static_cast<std::size_t>(r) * k + col]);
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best < 1e-12) return false;
        if (piv != col) {
            for (int c = 0; c < k; ++c)
                std::swap(m[static_cast<std::size_t>(piv) * k + c],
                          m[static_cast<std::size_t>(col) * k + c]);
            std::swap(rhs[piv], rhs[col]);
        }
        const double inv = 1.0 / m[static_cast<std::size_t>(col) * k + col];
        for (int r = 0; r < k; ++r) {
            if (r == col) continue;
            const double f = m[static_cast<std::size_t>(r) * k + col] * inv;
            if (f == 0.0) continue;
            for (int c = col; c < k; ++c)
                m[static_cast<std::size_t>(r) * k + c] -=
                    f * m[static_cast<std::size_t>(col) * k + c];
            rhs[r] -= f * rhs[col];
        }
    }
    for (int r = 0; r < k; ++r) rhs[r] /= m[static_cast<std::size_t>(r) * k + r];
    return true;
}

} // namespace detail

inline ExactProjection exact_project(const PointSet& ps, std::span<const int> candidates,
                                     std::span<const double> q) {
    if (candidates.empty())
        throw std::invalid_argument("exact_project: empty candidate set");
    if (static_cast<int>(q.size()) != ps.dim())
        throw std::invalid_argument("exact_project: query dimension mismatch");
    const int n = static_cast<int>(candidates.size());
    const int d = ps.dim();
    if (n > 64 && d > 8)
        throw std::invalid_argument("exact_project: instance exceeds oracle limit");

    // Gram of the candidates and their dots with q
    std::vector<double> gram(static_cast<std::size_t>(n) * n);
    std::vector<double> bq(n);
    for (int i = 0; i < n; ++i) {
        auto pi = ps.point(candidates[i]);
        double s = 0.0;
        for (int j = 0; j < d; ++j) s += pi[j] * q[j];
        bq[i] = s;
        for (int j = i; j < n; ++j) {
            auto pj = ps.point(candidates[j]);
            double g = 0.0;
            for (int k = 0; k < d; ++k) g += pi[k] * pj[k];
            gram[static_cast<std::size_t>(i) * n + j] = g;
            gram[static_cast<std::size_t>(j) * n + i] = g;
        }
    }
    double qq = 0.0;
    for (double v : q) qq += v * v;

    const int max_size = std::min(n, d + 1);
    double best_d2 = std::numeric_limits<double>::infinity();
    std::vector<int> best_subset;
    std::vector<double> best_lambda;

    std::vector<int> subset;
    std::vector<double> kkt, rhs;
    for (int s = 1; s <= max_size; ++s) {
        subset.resize(s);
        for (int i = 0; i < s; ++i) subset[i] = i;
        while (true) {
            const int k = s + 1;
            kkt.assign(static_cast<std::size_t>(k) * k, 0.0);
            rhs.assign(k, 0.0);
            for (int a = 0; a < s; ++a) {
                for (int b = 0; b < s; ++b)
                    kkt[static_cast<std::size_t>(a) * k + b] =
                        gram[static_cast<std::size_t>(subset[a]) * n + subset[b]];
                kkt[static_cast<std::size_t>(a) * k + s] = 1.0;
                kkt[static_cast<std::size_t>(s) * k + a] = 1.0;
                rhs[a] = bq[subset[a]];
            }
            rhs[s] = 1.0;
            if (detail::solve_affine_kkt(kkt, rhs, k)) {
                bool feasible = true;
                for (int a = 0; a < s; ++a)
                    if (rhs[a] < -1e-10) {
                        feasible = false;
                        break;
                    }
                if (feasible) {
                    double lb = 0.0;
                    for (int a = 0; a < s; ++a) lb += rhs[a] * bq[subset[a]];
                    const double d2 = std::max(qq - lb - rhs[s], 0.0);
                    if (d2 < best_d2) {
                        best_d2 = d2;
                        best_subset = subset;
                        best_lambda.assign(rhs.begin(), rhs.begin() + s);
                    }
                }
            }
            // next combination
            int pos = s - 1;
            while (pos >= 0 && subset[pos] == n - s + pos) --pos;
            if (pos < 0) break;
            ++subset[pos];
            for (int i = pos + 1; i < s; ++i) subset[i] = subset[i - 1] + 1;
        }
        if (best_d2 <= 1e-30) break; // query is inside the hull
    }

    ExactProjection out;
    out.point.assign(d, 0.0);
    SparseCombination comb;
    for (std::size_t a = 0; a < best_subset.size(); ++a) {
        const int idx = candidates[best_subset[a]];
        const double w = best_lambda[a];
        comb.add(idx, w);
        auto p = ps.point(idx);
        for (int j = 0; j < d; ++j) out.point[j] += w * p[j];
    }
    comb.prune_and_renormalize(0.0);
    out.combination = std::move(comb);
    double dist2 = 0.0;
    for (int j = 0; j < d; ++j) {
        const double v = q[j] - out.point[j];
        dist2 += v * v;
    }
    out.distance = std::sqrt(dist2);
    return out;
}

inline ExactProjection exact_project(const PointSet& ps, std::span<const double> q) {
    std::vector<int> all(ps.size());
    for (int i = 0; i < ps.size(); ++i) all[i] = i;
    return exact_project(ps, all, q);
}

} // namespace hullcode
