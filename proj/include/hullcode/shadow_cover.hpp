#pragma once

// Greedy hitting set over eps-shadows.
//
// The eps-shadow of a direction v is the outer supporting halfspace of the
// inner set in direction v, translated inward by eps. Any subset of the
// outer set whose hull eps-approximates the inner set must meet every
// shadow, so the cover loop repeatedly picks the outer point lying in the
// largest number of shadows of the still-unhappy inner points (those farther
// than (1+delta)*eps from the current hull), then advances each hit point's
// warm projection by a single segment step. A shadow containing no outer
// point certifies that no eps-approximation exists at all.

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "hullcode/dot_access.hpp"
#include "hullcode/greedy_hull.hpp"
#include "hullcode/point_set.hpp"
#include "hullcode/sparse_combination.hpp"

namespace hullcode {

/// A materialized eps-shadow: unit direction plus the inner-product cut.
struct ShadowQuery {
    std::vector<double> direction; // unit norm
    double threshold = 0.0;        // max_i <p_i, direction> - eps

    bool contains(std::span<const double> p) const {
        double s = 0.0;
        for (std::size_t j = 0; j < direction.size(); ++j) s += direction[j] * p[j];
        return s >= threshold;
    }
};

inline ShadowQuery make_shadow(const PointSet& pin, double eps, std::span<const double> v) {
    if (!(eps > 0.0))
        throw std::invalid_argument("make_shadow: eps must be positive");
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm <= 0.0)
        throw std::invalid_argument("make_shadow: zero direction");
    ShadowQuery q;
    q.direction.assign(v.begin(), v.end());
    for (double& x : q.direction) x /= norm;
    const DotAccess acc = DotAccess::from_points(pin);
    const int ext = extreme_point(acc, q.direction);
    double best = 0.0;
    auto pe = pin.point(ext);
    for (std::size_t j = 0; j < q.direction.size(); ++j) best += q.direction[j] * pe[j];
    q.threshold = best - eps;
    return q;
}

inline bool shadow_contains(const PointSet& pin, double eps, std::span<const double> v,
                            std::span<const double> p) {
    return make_shadow(pin, eps, v).contains(p);
}

class CoverInfeasibleError : public std::runtime_error {
public:
    explicit CoverInfeasibleError(int point)
        : std::runtime_error("no approximation possible: an eps-shadow contains no outer point"),
          point_(point) {}
    int point() const { return point_; }

private:
    int point_ = 0;
};

struct CoverOptions {
    std::int64_t max_iterations = -1;                     // safety valve
    std::vector<std::vector<double>>* dist_history = nullptr; // per-iteration inner distances
};

/// Greedy cover over a joint access: pin and pout are index views into acc.
/// Both sets are expected inside the unit ball (normalize jointly first);
/// eps and delta are absolute in those units. Returns selected positions
/// into pout; codes are the per-inner-point warm combinations, also indexed
/// by pout position.
inline HullApproximation greedy_cover(const DotAccess& acc, std::span<const int> pin,
                                      std::span<const int> pout, double eps, double delta,
                                      const CoverOptions& opts = {}) {
    if (!(eps > 0.0 && eps < 1.0) || !(delta > 0.0 && delta < 1.0 + 1e-12))
        throw std::invalid_argument("greedy_cover: eps and delta must be in (0,1]");
    if (pin.empty() || pout.empty())
        throw std::invalid_argument("greedy_cover: empty point set");

    const int nin = static_cast<int>(pin.size());
    const int nout = static_cast<int>(pout.size());
    const double happy_dist = (1.0 + delta) * eps;

    HullApproximation out;
    out.stats.eps = eps;
    out.stats.delta = delta;
    out.stats.diam_hint = diameter_2approx(acc);
    out.achieved_bound = happy_dist;
    out.stats.per_point_extra.assign(nin, 0); // hit counters

    // initial selection: the outer point nearest to the first inner point
    int a0 = 0;
    {
        const double qq = acc.norm_sq(pin[0]);
        double best = acc.norm_sq(pout[0]) - 2.0 * acc.dot(pout[0], pin[0]) + qq;
        for (int j = 1; j < nout; ++j) {
            const double d2 = acc.norm_sq(pout[j]) - 2.0 * acc.dot(pout[j], pin[0]) + qq;
            if (d2 < best) {
                best = d2;
                a0 = j;
            }
        }
    }
    out.selected.push_back(a0);

    // per inner point: warm combination (over pout positions), scalars, and
    // cached dots <x, ann> for every x in pin then pout (positions 0..nin-1
    // are pin, nin..nin+nout-1 are pout)
    const int ncols = nin + nout;
    auto col_index = [&](int pos) { return pos < nin ? pin[pos] : pout[pos - nin]; };

    std::vector<SparseCombination> ann(nin);
    std::vector<double> aa(nin), qa(nin), dist2(nin);
    std::vector<std::vector<double>> xa(nin, std::vector<double>(ncols));
    std::vector<char> unhappy(nin);
    std::vector<std::int64_t>& hits = out.stats.per_point_extra;

    std::vector<double> a0col(ncols);
    for (int x = 0; x < ncols; ++x) a0col[x] = acc.dot(col_index(x), pout[a0]);
    for (int q = 0; q < nin; ++q) {
        ann[q] = SparseCombination::unit(a0);
        aa[q] = acc.norm_sq(pout[a0]);
        qa[q] = a0col[q];
        xa[q] = a0col;
        dist2[q] = std::max(acc.norm_sq(pin[q]) - 2.0 * qa[q] + aa[q], 0.0);
        unhappy[q] = std::sqrt(dist2[q]) >= happy_dist;
    }

    std::vector<double> cut(nin);
    std::vector<std::int64_t> votes(nout);
    std::vector<double> starcol(ncols);

    auto snapshot = [&] {
        if (!opts.dist_history) return;
        std::vector<double> row(nin);
        for (int q = 0; q < nin; ++q) row[q] = std::sqrt(dist2[q]);
        opts.dist_history->push_back(std::move(row));
    };
    snapshot();

    while (true) {
        bool any_unhappy = false;
        for (int q = 0; q < nin; ++q) any_unhappy |= unhappy[q] != 0;
        if (!any_unhappy) break;
        if (opts.max_iterations >= 0 && out.stats.iterations >= opts.max_iterations) break;

        // form each unhappy point's shadow cut (in unnormalized dot units)
        // and vote for the outer points inside it
        votes.assign(nout, 0);
        for (int q = 0; q < nin; ++q) {
            if (!unhappy[q]) continue;
            const double vnorm = std::sqrt(dist2[q]);
            double max_in = 0.0;
            for (int x = 0; x < nin; ++x) {
                const double s = acc.dot(pin[x], pin[q]) - xa[q][x];
                if (x == 0 || s > max_in) max_in = s;
            }
            cut[q] = max_in - eps * vnorm;
            bool hit_possible = false;
            for (int j = 0; j < nout; ++j) {
                const double s = acc.dot(pout[j], pin[q]) - xa[q][nin + j];
                if (s >= cut[q]) {
                    ++votes[j];
                    hit_possible = true;
                }
            }
            if (!hit_possible) throw CoverInfeasibleError(q);
            out.stats.distance_queries += ncols;
        }

        int star = 0;
        for (int j = 1; j < nout; ++j)
            if (votes[j] > votes[star]) star = j;
        ++out.stats.iterations;

        bool already = false;
        for (int s : out.selected) already |= s == star;
        if (!already) out.selected.push_back(star);

        for (int x = 0; x < ncols; ++x) starcol[x] = acc.dot(col_index(x), pout[star]);
        const double star_norm = acc.norm_sq(pout[star]);

        // one warm segment step for every unhappy point the pick hits
        for (int q = 0; q < nin; ++q) {
            if (!unhappy[q]) continue;
            const double score = starcol[q] - xa[q][nin + star];
            if (score < cut[q]) continue;

            ++hits[q];
            const double num = score - qa[q] + aa[q]; // <p* - ann, q - ann>
            const double den = star_norm - 2.0 * xa[q][nin + star] + aa[q];
            if (num <= 0.0 || den <= 0.0) continue;
            double t = num / den;
            if (t > 1.0) t = 1.0;

            dist2[q] = std::max(dist2[q] - (2.0 * t * num - t * t * den), 0.0);
            ann[q].scale(1.0 - t);
            ann[q].add(star, t);
            qa[q] = (1.0 - t) * qa[q] + t * starcol[q];
            aa[q] = (1.0 - t) * (1.0 - t) * aa[q] + 2.0 * t * (1.0 - t) * xa[q][nin + star] +
                    t * t * star_norm;
            for (int x = 0; x < ncols; ++x)
                xa[q][x] = (1.0 - t) * xa[q][x] + t * starcol[x];
            if (std::sqrt(dist2[q]) < happy_dist) unhappy[q] = 0; // happy for good
        }
        snapshot();
    }

    for (auto& c : ann) c.prune_and_renormalize();
    out.codes = std::move(ann);
    return out;
}

/// Two-set convenience form: concatenates the sets (which must share a
/// dimension), builds an explicit access over the union, and runs the cover.
inline HullApproximation greedy_cover(const PointSet& pin, const PointSet& pout, double eps,
                                      double delta, const CoverOptions& opts = {}) {
    if (pin.dim() != pout.dim())
        throw std::invalid_argument("greedy_cover: dimension mismatch");
    std::vector<double> joint;
    joint.reserve(static_cast<std::size_t>(pin.size() + pout.size()) * pin.dim());
    joint.insert(joint.end(), pin.coords().begin(), pin.coords().end());
    joint.insert(joint.end(), pout.coords().begin(), pout.coords().end());
    const PointSet both(pin.size() + pout.size(), pin.dim(), std::move(joint));
    const DotAccess acc = DotAccess::from_points(both);
    std::vector<int> in_idx(pin.size()), out_idx(pout.size());
    for (int i = 0; i < pin.size(); ++i) in_idx[i] = i;
    for (int i = 0; i < pout.size(); ++i) out_idx[i] = pin.size() + i;
    return greedy_cover(acc, in_idx, out_idx, eps, delta, opts);
}

} // namespace hullcode
