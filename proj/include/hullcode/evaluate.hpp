#pragma once

// Ground-truth evaluation of a hull approximation.
//
// The maximum of a point-to-convex-set distance over a hull is attained at a
// vertex, so the one-sided Hausdorff distance from conv(P) to conv(T) equals
// the max over the dataset points themselves; no interior sampling needed.

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hullcode/exact_projection.hpp"
#include "hullcode/point_set.hpp"
#include "hullcode/projection.hpp"

namespace hullcode {

enum class HausdorffMode { oracle, approximate };

struct EvalReport {
    double hausdorff_one_sided = 0.0;
    int max_code_support = 0;
    double mean_code_support = 0.0;
    int selected_size = 0;
    double eps_used = 0.0;
    std::string method; // "oracle" | "approximate"
};

/// max_{p in P} dist(p, conv(T)) for an index subset T. Approximate mode
/// overshoots by at most eps_fine * diam(P): the inner projections run at
/// eps_fine / 2 against the 2-approximate diameter, which is at most
/// eps_fine times the true one.
inline double hausdorff_one_sided(const PointSet& ps, std::span<const int> t, HausdorffMode mode,
                                  double eps_fine = 0.05) {
    if (t.empty())
        throw std::invalid_argument("hausdorff_one_sided: empty subset");
    double worst = 0.0;
    if (mode == HausdorffMode::oracle) {
        for (int p = 0; p < ps.size(); ++p)
            worst = std::max(worst, exact_project(ps, t, ps.point(p)).distance);
    } else {
        const DotAccess acc = DotAccess::from_points(ps);
        ProjectOptions opts;
        opts.candidates = t;
        opts.diam_hint = diameter_2approx(acc);
        for (int p = 0; p < ps.size(); ++p)
            worst = std::max(
                worst,
                approx_project(acc, QueryPoint::from_index(p), eps_fine / 2.0, opts).distance);
    }
    return worst;
}

/// Variant against an explicit candidate hull (e.g. a planted certificate
/// whose vertices are not dataset points).
inline double hausdorff_one_sided(const PointSet& ps, const PointSet& hull, HausdorffMode mode,
                                  double eps_fine = 0.05) {
    if (ps.dim() != hull.dim())
        throw std::invalid_argument("hausdorff_one_sided: dimension mismatch");
    double worst = 0.0;
    if (mode == HausdorffMode::oracle) {
        for (int p = 0; p < ps.size(); ++p)
            worst = std::max(worst, exact_project(hull, ps.point(p)).distance);
    } else {
        const DotAccess acc = DotAccess::from_points(hull);
        ProjectOptions opts;
        opts.diam_hint = std::max(diameter_2approx(acc), diameter_2approx(ps));
        for (int p = 0; p < ps.size(); ++p) {
            auto q = ps.point(p);
            worst = std::max(worst,
                             approx_project(acc, QueryPoint::from_vector({q.begin(), q.end()}),
                                            eps_fine / 2.0, opts)
                                 .distance);
        }
    }
    return worst;
}

} // namespace hullcode
