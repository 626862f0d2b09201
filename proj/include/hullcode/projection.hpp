#pragma once

// Approximate projection onto the convex hull of a point set.
//
// approx_project computes a point of conv(P) within additive eps*diam of the
// true distance to the query, returned as a sparse convex combination with
// O(1/eps^2) support. Each round moves the iterate to the closest point on
// the segment towards the extreme point in the direction of the residual;
// the run stops either on the gap certificate (the step's progress measure
// drops to eps*diam, which certifies the additive bound) or on the O(1/eps^2)
// iteration budget.
//
// The loop maintains the running scalars <a,a>, <q,a> and <p_i,a> so one
// iteration costs O(n) dot-product reads; the squared distance is updated by
// the exact line-search decrement, which makes the recorded distance trace
// nonincreasing by construction.

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "hullcode/dot_access.hpp"
#include "hullcode/sparse_combination.hpp"

namespace hullcode {

/// Support constant: budget and support size are capped at 16/eps^2.
inline constexpr double kSparsityConstant = 16.0;

inline std::int64_t projection_budget(double eps) {
    const double cap = std::ceil(kSparsityConstant / (eps * eps));
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(cap) - 1);
}

enum class StopReason { gap_certificate, budget };

struct ProjectionResult {
    SparseCombination point;        // the returned element of conv(P)
    double distance = 0.0;          // ||q - point||
    std::int64_t iterations = 0;    // segment updates performed
    StopReason converged_by = StopReason::gap_certificate;
    std::vector<double> trace;      // distance after init and each update (opt-in)
};

struct ProjectOptions {
    double diam_hint = -1.0;                        // < 0: use diameter_2approx
    const SparseCombination* warm_start = nullptr;  // initial iterate (support must lie in candidates)
    std::span<const int> candidates = {};           // restrict to these indices; empty = all
    bool record_trace = false;
    std::int64_t max_iterations = -1;               // extra cap below the eps budget
};

inline ProjectionResult approx_project(const DotAccess& acc, const QueryPoint& q, double eps,
                                       const ProjectOptions& opts = {}) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("approx_project: eps must be in (0,1)");
    if (acc.size() < 1)
        throw std::invalid_argument("approx_project: empty point set");

    std::vector<int> all;
    std::span<const int> cand = opts.candidates;
    if (cand.empty()) {
        all.resize(acc.size());
        for (int i = 0; i < acc.size(); ++i) all[i] = i;
        cand = all;
    }
    const int m = static_cast<int>(cand.size());

    const double diam = opts.diam_hint >= 0.0 ? opts.diam_hint : diameter_2approx(acc);
    const double threshold = eps * diam;

    const double qq = q.norm_sq(acc);
    std::vector<double> pq(m);
    for (int c = 0; c < m; ++c) pq[c] = q.dot_with(acc, cand[c]);

    SparseCombination cur;
    double aa = 0.0, qa = 0.0;
    std::vector<double> pa(m);

    if (opts.warm_start && !opts.warm_start->empty()) {
        cur = *opts.warm_start;
        aa = 0.0;
        for (const auto& a : cur.entries())
            for (const auto& b : cur.entries()) aa += a.weight * b.weight * acc.dot(a.index, b.index);
        qa = 0.0;
        for (const auto& e : cur.entries()) qa += e.weight * q.dot_with(acc, e.index);
        for (int c = 0; c < m; ++c) {
            double s = 0.0;
            for (const auto& e : cur.entries()) s += e.weight * acc.dot(cand[c], e.index);
            pa[c] = s;
        }
    } else {
        // closest candidate to the query
        int best = 0;
        double best_d2 = acc.norm_sq(cand[0]) - 2.0 * pq[0] + qq;
        for (int c = 1; c < m; ++c) {
            const double d2 = acc.norm_sq(cand[c]) - 2.0 * pq[c] + qq;
            if (d2 < best_d2 || (d2 == best_d2 && cand[c] < cand[best])) {
                best_d2 = d2;
                best = c;
            }
        }
        cur = SparseCombination::unit(cand[best]);
        aa = acc.norm_sq(cand[best]);
        qa = pq[best];
        for (int c = 0; c < m; ++c) pa[c] = acc.dot(cand[c], cand[best]);
    }

    double ell2 = std::max(qq - 2.0 * qa + aa, 0.0);

    ProjectionResult res;
    if (opts.record_trace) res.trace.push_back(std::sqrt(ell2));

    std::int64_t budget = projection_budget(eps);
    if (opts.max_iterations >= 0) budget = std::min(budget, opts.max_iterations);

    StopReason reason = StopReason::budget;
    while (res.iterations < budget) {
        // extreme candidate in the direction q - a
        int star = 0;
        double smax = pq[0] - pa[0];
        for (int c = 1; c < m; ++c) {
            const double s = pq[c] - pa[c];
            if (s > smax || (s == smax && cand[c] < cand[star])) {
                smax = s;
                star = c;
            }
        }

        const double ell = std::sqrt(ell2);
        if (ell <= threshold) {
            reason = StopReason::gap_certificate;
            break;
        }
        // progress measure: length of the step the extreme point projects
        // onto the residual direction; below eps*diam it certifies
        // distance <= dist(q, conv) + eps*diam
        const double num = smax - qa + aa; // <p* - a, q - a>
        if (num / ell <= threshold) {
            reason = StopReason::gap_certificate;
            break;
        }

        const double den = acc.norm_sq(cand[star]) - 2.0 * pa[star] + aa; // ||p* - a||^2
        if (den <= 0.0) {
            reason = StopReason::gap_certificate;
            break;
        }
        double t = num / den;
        if (t > 1.0) t = 1.0;

        ell2 = std::max(ell2 - (2.0 * t * num - t * t * den), 0.0);

        cur.scale(1.0 - t);
        cur.add(cand[star], t);
        qa = (1.0 - t) * qa + t * pq[star];
        aa = (1.0 - t) * (1.0 - t) * aa + 2.0 * t * (1.0 - t) * pa[star] +
             t * t * acc.norm_sq(cand[star]);
        for (int c = 0; c < m; ++c)
            pa[c] = (1.0 - t) * pa[c] + t * acc.dot(cand[c], cand[star]);

        ++res.iterations;
        if (opts.record_trace) res.trace.push_back(std::sqrt(ell2));
    }

    cur.prune_and_renormalize();
    res.point = std::move(cur);
    res.distance = std::sqrt(ell2);
    res.converged_by = reason;
    return res;
}

inline ProjectionResult approx_project(const PointSet& ps, const QueryPoint& q, double eps,
                                       const ProjectOptions& opts = {}) {
    return approx_project(DotAccess::from_points(ps), q, eps, opts);
}

/// Encode every point of the dataset as a sparse convex combination over the
/// index subset T. Codes are returned in point order.
inline std::vector<ProjectionResult> encode_dataset(const DotAccess& acc, std::span<const int> t,
                                                    double eps, double diam_hint = -1.0) {
    if (t.empty())
        throw std::invalid_argument("encode_dataset: empty index set");
    ProjectOptions opts;
    opts.candidates = t;
    opts.diam_hint = diam_hint >= 0.0 ? diam_hint : diameter_2approx(acc);
    std::vector<ProjectionResult> codes;
    codes.reserve(acc.size());
    for (int i = 0; i < acc.size(); ++i)
        codes.push_back(approx_project(acc, QueryPoint::from_index(i), eps, opts));
    return codes;
}

inline std::vector<ProjectionResult> encode_dataset(const PointSet& ps, std::span<const int> t,
                                                    double eps, double diam_hint = -1.0) {
    return encode_dataset(DotAccess::from_points(ps), t, eps, diam_hint);
}

} // namespace hullcode
