#pragma once

// Incremental orthonormal-subspace engine for the fast farthest-point loop.
//
// The selected points span a growing linear subspace. Each point keeps its
// coordinates in an orthonormal basis of that subspace plus its residual
// distance to the subspace, so distances to anything inside the subspace
// decompose by the Pythagorean identity and the per-point warm projection
// runs in the (small) subspace dimension instead of the ambient one.
//
// Basis vectors are stored as coefficient rows over the selected points,
// which keeps the whole engine expressible through dot products (and hence
// usable with Gram-matrix inputs).

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "hullcode/dot_access.hpp"
#include "hullcode/projection.hpp"
#include "hullcode/sparse_combination.hpp"

namespace hullcode {

/// Residuals at or below kSpanTolFactor * diam' do not extend the basis;
/// such a selected point joins the hull but not the span.
inline constexpr double kSpanTolFactor = 1e-9;

/// Relative noise floor for the same decision. Everything here is computed
/// through dot products, so a residual norm is a difference of O(||p||^2)
/// quantities with absolute noise near machine epsilon times ||p||^2; a
/// basis vector normalized by a residual below a few 1e-3 of ||p|| would
/// miss unit length by more than the 1e-8 state invariants allow. Points whose
/// residual falls under the floor join the hull without extending the span;
/// their unrepresented component is at most the floor itself.
inline constexpr double kSpanRelativeTol = 3e-3;

struct AnnUpdate {
    std::int64_t extra_iterations = 0;
    StopReason converged_by = StopReason::gap_certificate;
};

class SubspaceEngine {
public:
    SubspaceEngine(const DotAccess& acc, double diam_hint)
        : acc_(&acc), diam_hint_(diam_hint), span_tol_(kSpanTolFactor * diam_hint) {
        const int n = acc.size();
        resid2_.resize(n);
        for (int i = 0; i < n; ++i) resid2_[i] = acc.norm_sq(i);
        coords_.assign(n, {});
        ann_.assign(n, {});
        ann_coords_.assign(n, {});
        ann_span_dist2_.assign(n, 0.0);
    }

    int size() const { return acc_->size(); }
    int basis_count() const { return static_cast<int>(basis_rows_.size()); }
    const std::vector<int>& selected() const { return selected_; }

    std::span<const double> coords(int p) const { return coords_[p]; }
    double resid(int p) const { return std::sqrt(resid2_[p]); }
    double resid_sq(int p) const { return resid2_[p]; }
    const SparseCombination& ann(int p) const { return ann_[p]; }
    double ann_dist(int p) const { return std::sqrt(resid2_[p] + ann_span_dist2_[p]); }

    /// Add a point to the selected set, extending the basis when the point
    /// sticks out of the current span. Returns whether the basis grew.
    bool add_selected(int index) {
        if (index < 0 || index >= size())
            throw std::invalid_argument("SubspaceEngine: invalid index");
        const bool first = selected_.empty();
        const double tol_sq = std::max(span_tol_ * span_tol_,
                                       kSpanRelativeTol * kSpanRelativeTol * acc_->norm_sq(index));
        const bool extend = resid2_[index] > tol_sq;
        selected_.push_back(index);

        if (extend) {
            const int b = basis_count();
            const std::vector<double> c1 = coords_[index]; // coords in the old basis

            // residual coefficients over selected_ (the new point sits last)
            std::vector<double> u(selected_.size(), 0.0);
            for (int j = 0; j < b; ++j)
                for (std::size_t t = 0; t < basis_rows_[j].size(); ++t)
                    u[t] -= c1[j] * basis_rows_[j][t];
            u.back() = 1.0;

            // second orthogonalization pass; one subtraction leaves an error
            // of order machine-eps * ||x|| / resid, which ruins the basis
            // when the residual is small
            std::vector<double> c2(b, 0.0);
            for (int j = 0; j < b; ++j) {
                double s = 0.0;
                for (std::size_t t = 0; t < selected_.size(); ++t)
                    s += u[t] * coords_[selected_[t]][j];
                c2[j] = s;
            }
            for (int j = 0; j < b; ++j)
                for (std::size_t t = 0; t < basis_rows_[j].size(); ++t)
                    u[t] -= c2[j] * basis_rows_[j][t];

            std::vector<double> ct(b);
            for (int j = 0; j < b; ++j) ct[j] = c1[j] + c2[j];
            double r2 = acc_->norm_sq(index);
            for (int j = 0; j < b; ++j) r2 -= ct[j] * ct[j];
            const double r = std::sqrt(std::max(r2, 1e-300));
            for (double& v : u) v /= r;
            basis_rows_.push_back(std::move(u));

            for (int p = 0; p < size(); ++p) {
                double proj = acc_->dot(p, index);
                for (int j = 0; j < b; ++j) proj -= coords_[p][j] * ct[j];
                const double cn = proj / r;
                coords_[p].push_back(cn);
                resid2_[p] = std::max(resid2_[p] - cn * cn, 0.0);
            }

            if (!first) {
                // warm iterates gain the new coordinate
                for (int p = 0; p < size(); ++p) {
                    double ac = 0.0;
                    for (const auto& e : ann_[p].entries())
                        ac += e.weight * coords_[e.index].back();
                    ann_coords_[p].push_back(ac);
                    const double diff = coords_[p].back() - ac;
                    ann_span_dist2_[p] += diff * diff;
                }
            }
        }

        if (first) {
            for (int p = 0; p < size(); ++p) {
                ann_[p] = SparseCombination::unit(index);
                ann_coords_[p] = coords_[index];
                double d2 = 0.0;
                for (std::size_t j = 0; j < coords_[p].size(); ++j) {
                    const double v = coords_[p][j] - ann_coords_[p][j];
                    d2 += v * v;
                }
                ann_span_dist2_[p] = d2;
            }
        }
        return extend;
    }

    /// One warm-started projection pass for a point against the current
    /// selected set, run inside the subspace. Stops on the same gap
    /// certificate / budget as approx_project; afterwards
    /// ann_dist(p) <= dist(p, conv(selected)) + eps * diam_hint.
    AnnUpdate update_ann(int point, double eps, std::int64_t max_iterations = -1) {
        if (!(eps > 0.0 && eps < 1.0))
            throw std::invalid_argument("SubspaceEngine: eps must be in (0,1)");
        const int b = basis_count();
        const double threshold = eps * diam_hint_;
        std::vector<double>& ac = ann_coords_[point];
        const std::vector<double>& qc = coords_[point];
        double ell2 = ann_span_dist2_[point];

        std::int64_t budget = projection_budget(eps);
        if (max_iterations >= 0) budget = std::min(budget, max_iterations);

        AnnUpdate out;
        out.converged_by = StopReason::budget;
        std::vector<double> dir(b);
        while (out.extra_iterations < budget) {
            for (int j = 0; j < b; ++j) dir[j] = qc[j] - ac[j];

            int star = -1;
            double smax = 0.0;
            for (int t = 0; t < static_cast<int>(selected_.size()); ++t) {
                const auto& sc = coords_[selected_[t]];
                double s = 0.0;
                for (int j = 0; j < b; ++j) s += sc[j] * dir[j];
                if (star < 0 || s > smax ||
                    (s == smax && selected_[t] < selected_[star])) {
                    smax = s;
                    star = t;
                }
            }
            double shift = 0.0;
            for (int j = 0; j < b; ++j) shift += ac[j] * dir[j];

            const double ell = std::sqrt(ell2);
            if (ell <= threshold) {
                out.converged_by = StopReason::gap_certificate;
                break;
            }
            const double num = smax - shift; // <p* - ann, q - ann> in-span
            if (num / ell <= threshold) {
                out.converged_by = StopReason::gap_certificate;
                break;
            }

            const auto& sc = coords_[selected_[star]];
            double den = 0.0;
            for (int j = 0; j < b; ++j) {
                const double v = sc[j] - ac[j];
                den += v * v;
            }
            if (den <= 0.0) {
                out.converged_by = StopReason::gap_certificate;
                break;
            }
            double t = num / den;
            if (t > 1.0) t = 1.0;

            ell2 = std::max(ell2 - (2.0 * t * num - t * t * den), 0.0);
            ann_[point].scale(1.0 - t);
            ann_[point].add(selected_[star], t);
            for (int j = 0; j < b; ++j) ac[j] = (1.0 - t) * ac[j] + t * sc[j];
            ++out.extra_iterations;
        }

        ann_span_dist2_[point] = ell2;
        return out;
    }

    /// Max deviation of <v_a, v_b> from identity over all basis pairs.
    double orthonormality_error() const {
        const int len = static_cast<int>(selected_.size());
        std::vector<double> gsel(static_cast<std::size_t>(len) * len);
        for (int s = 0; s < len; ++s)
            for (int t = 0; t < len; ++t)
                gsel[static_cast<std::size_t>(s) * len + t] = acc_->dot(selected_[s], selected_[t]);
        double worst = 0.0;
        for (std::size_t a = 0; a < basis_rows_.size(); ++a) {
            for (std::size_t b = a; b < basis_rows_.size(); ++b) {
                double dot = 0.0;
                for (std::size_t s = 0; s < basis_rows_[a].size(); ++s)
                    for (std::size_t t = 0; t < basis_rows_[b].size(); ++t)
                        dot += basis_rows_[a][s] * basis_rows_[b][t] *
                               gsel[s * static_cast<std::size_t>(len) + t];
                const double target = a == b ? 1.0 : 0.0;
                worst = std::max(worst, std::abs(dot - target));
            }
        }
        return worst;
    }

    /// Max relative deviation of ||p||^2 from sum coords^2 + resid^2.
    double pythagoras_error() const {
        double worst = 0.0;
        for (int p = 0; p < size(); ++p) {
            double s = resid2_[p];
            for (double c : coords_[p]) s += c * c;
            const double ref = std::max(1.0, acc_->norm_sq(p));
            worst = std::max(worst, std::abs(s - acc_->norm_sq(p)) / ref);
        }
        return worst;
    }

    /// Relative deviation of the maintained ann_dist from one recomputed out
    /// of the warm combination (consistency of the cached state).
    double ann_consistency_error(int p) const {
        const int b = basis_count();
        std::vector<double> pos(b, 0.0);
        for (const auto& e : ann_[p].entries())
            for (int j = 0; j < b; ++j) pos[j] += e.weight * coords_[e.index][j];
        double span2 = 0.0;
        for (int j = 0; j < b; ++j) {
            const double v = coords_[p][j] - pos[j];
            span2 += v * v;
        }
        const double recomputed = resid2_[p] + span2;
        const double cached = resid2_[p] + ann_span_dist2_[p];
        return std::abs(recomputed - cached) / std::max(1.0, cached);
    }

    /// Drop negligible warm weights; called when a run finishes.
    void finalize_codes() {
        for (auto& c : ann_) c.prune_and_renormalize();
    }

private:
    const DotAccess* acc_;
    double diam_hint_;
    double span_tol_;
    std::vector<int> selected_;
    std::vector<std::vector<double>> basis_rows_;
    std::vector<std::vector<double>> coords_;
    std::vector<double> resid2_;
    std::vector<SparseCombination> ann_;
    std::vector<std::vector<double>> ann_coords_;
    std::vector<double> ann_span_dist2_;
};

} // namespace hullcode
