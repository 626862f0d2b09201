#pragma once

// Farthest-point hull coreset.
//
// Repeatedly select the point (approximately) farthest from the convex hull
// of the current selection until every point is within delta * diam'/2 of
// it, where delta = 8 * eps^(1/3) and diam' is the linear-scan 2-approximate
// diameter. On termination the one-sided Hausdorff distance from the input
// to the selected hull is at most (8 eps^(1/3) + eps) * diam.
//
// Two interchangeable engines share this contract:
//   - naive: re-runs the hull projection for every point each round,
//     warm-started from the previous round's combination;
//   - fast: maintains the incremental-subspace state so each warm update
//     runs in the subspace dimension, with amortized O(1/eps^2) extra
//     projection iterations per point over the whole run.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hullcode/dot_access.hpp"
#include "hullcode/incremental_subspace.hpp"
#include "hullcode/projection.hpp"
#include "hullcode/sparse_combination.hpp"

namespace hullcode {

struct RunStats {
    std::int64_t iterations = 0;        // selected-set size (cluster), selection rounds (cover)
    std::int64_t distance_queries = 0;
    double eps = 0.0;
    double delta = 0.0;                 // cluster: 8 eps^(1/3); cover: the input delta
    double diam_hint = 0.0;
    std::vector<std::int64_t> per_point_extra; // fast: warm extra iterations; cover: hits
    double max_orthonormality_error = 0.0;     // only filled when invariant checks run
    double max_pythagoras_error = 0.0;
};

struct HullApproximation {
    std::vector<int> selected;          // in selection order
    std::vector<double> radii;          // radii[i]: distance at which selected[i+1] was accepted
    double achieved_bound = 0.0;
    std::vector<SparseCombination> codes; // per-point warm combinations (may be empty)
    RunStats stats;
};

struct ClusterOptions {
    std::int64_t max_rounds = -1;              // safety valve; < 0 = run to the stop test
    std::int64_t project_max_iterations = -1;  // cap forwarded to the inner projections
    bool check_subspace_invariants = false;    // fast engine: verify basis state every extension
    bool keep_codes = true;
};

namespace detail {

inline int max_norm_index(const DotAccess& acc) {
    int best = 0;
    double best_n = acc.norm_sq(0);
    for (int i = 1; i < acc.size(); ++i)
        if (acc.norm_sq(i) > best_n) {
            best_n = acc.norm_sq(i);
            best = i;
        }
    return best;
}

inline void check_cluster_args(const DotAccess& acc, double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("greedy_cluster: eps must be in (0,1)");
    if (acc.size() < 1)
        throw std::invalid_argument("greedy_cluster: empty point set");
}

} // namespace detail

inline HullApproximation greedy_cluster_fast(const DotAccess& acc, double eps,
                                             const ClusterOptions& opts = {}) {
    detail::check_cluster_args(acc, eps);
    const int n = acc.size();
    const double diam = diameter_2approx(acc);
    const double delta = 8.0 * std::cbrt(eps);
    const double stop_radius = delta * diam / 2.0;

    HullApproximation out;
    out.stats.eps = eps;
    out.stats.delta = delta;
    out.stats.diam_hint = diam;
    out.stats.per_point_extra.assign(n, 0);
    out.achieved_bound = (delta + eps) * diam;

    SubspaceEngine engine(acc, diam);
    engine.add_selected(detail::max_norm_index(acc));
    out.selected.push_back(engine.selected().front());

    auto record_invariants = [&] {
        if (!opts.check_subspace_invariants) return;
        out.stats.max_orthonormality_error =
            std::max(out.stats.max_orthonormality_error, engine.orthonormality_error());
        out.stats.max_pythagoras_error =
            std::max(out.stats.max_pythagoras_error, engine.pythagoras_error());
    };
    record_invariants();

    while (opts.max_rounds < 0 || static_cast<std::int64_t>(out.selected.size()) < opts.max_rounds) {
        int far = 0;
        double far_dist = engine.ann_dist(0);
        for (int p = 1; p < n; ++p) {
            const double d = engine.ann_dist(p);
            if (d > far_dist) {
                far_dist = d;
                far = p;
            }
        }
        if (far_dist <= stop_radius) break;

        out.radii.push_back(far_dist);
        out.selected.push_back(far);
        engine.add_selected(far);
        record_invariants();
        for (int p = 0; p < n; ++p) {
            const AnnUpdate u = engine.update_ann(p, eps, opts.project_max_iterations);
            out.stats.per_point_extra[p] += u.extra_iterations;
        }
        out.stats.distance_queries += n;
    }

    if (opts.keep_codes) {
        engine.finalize_codes();
        out.codes.reserve(n);
        for (int p = 0; p < n; ++p) out.codes.push_back(engine.ann(p));
    }
    out.stats.iterations = static_cast<std::int64_t>(out.selected.size());
    return out;
}

inline HullApproximation greedy_cluster_naive(const DotAccess& acc, double eps,
                                              const ClusterOptions& opts = {}) {
    detail::check_cluster_args(acc, eps);
    const int n = acc.size();
    const double diam = diameter_2approx(acc);
    const double delta = 8.0 * std::cbrt(eps);
    const double stop_radius = delta * diam / 2.0;

    HullApproximation out;
    out.stats.eps = eps;
    out.stats.delta = delta;
    out.stats.diam_hint = diam;
    out.achieved_bound = (delta + eps) * diam;
    out.selected.push_back(detail::max_norm_index(acc));

    std::vector<SparseCombination> warm(n);
    std::vector<double> dist(n, 0.0);

    ProjectOptions popts;
    popts.diam_hint = diam;
    popts.max_iterations = opts.project_max_iterations;

    while (opts.max_rounds < 0 || static_cast<std::int64_t>(out.selected.size()) <= opts.max_rounds) {
        for (int p = 0; p < n; ++p) {
            popts.candidates = out.selected;
            popts.warm_start = warm[p].empty() ? nullptr : &warm[p];
            ProjectionResult res =
                approx_project(acc, QueryPoint::from_index(p), eps, popts);
            warm[p] = std::move(res.point);
            dist[p] = res.distance;
        }
        out.stats.distance_queries += n;

        int far = 0;
        double far_dist = dist[0];
        for (int p = 1; p < n; ++p)
            if (dist[p] > far_dist) {
                far_dist = dist[p];
                far = p;
            }
        if (far_dist <= stop_radius) break;

        out.radii.push_back(far_dist);
        out.selected.push_back(far);
    }

    if (opts.keep_codes) out.codes = std::move(warm);
    out.stats.iterations = static_cast<std::int64_t>(out.selected.size());
    return out;
}

enum class ClusterEngine { naive, fast };

inline HullApproximation greedy_cluster(const DotAccess& acc, double eps,
                                        ClusterEngine engine = ClusterEngine::fast,
                                        const ClusterOptions& opts = {}) {
    return engine == ClusterEngine::fast ? greedy_cluster_fast(acc, eps, opts)
                                         : greedy_cluster_naive(acc, eps, opts);
}

inline HullApproximation greedy_cluster(const PointSet& ps, double eps,
                                        ClusterEngine engine = ClusterEngine::fast,
                                        const ClusterOptions& opts = {}) {
    return greedy_cluster(DotAccess::from_points(ps), eps, engine, opts);
}

} // namespace hullcode
