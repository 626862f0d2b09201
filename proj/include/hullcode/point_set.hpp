#pragma once

// Point-set storage and unit-ball normalization.
//
// All algorithms in this library assume their input lives inside the unit
// ball. normalize_to_unit_ball() produces that form together with the
// invertible affine transform that was applied, so results can be mapped
// back to raw coordinates.

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hullcode {

/// Immutable set of n points in d dimensions (row-major) with cached
/// squared norms. Safe to share across threads after construction.
class PointSet {
public:
    PointSet(int n, int d, std::vector<double> coords)
        : n_(n), d_(d), coords_(std::move(coords)) {
        if (n_ < 1 || d_ < 1)
            throw std::invalid_argument("PointSet: need n >= 1 and d >= 1");
        if (coords_.size() != static_cast<std::size_t>(n_) * d_)
            throw std::invalid_argument("PointSet: coordinate buffer size mismatch");
        for (double v : coords_)
            if (!std::isfinite(v))
                throw std::invalid_argument("PointSet: non-finite coordinate");
        norms_sq_.resize(n_);
        for (int i = 0; i < n_; ++i) {
            double s = 0.0;
            const double* p = row_ptr(i);
            for (int j = 0; j < d_; ++j) s += p[j] * p[j];
            norms_sq_[i] = s;
        }
    }

    explicit PointSet(const std::vector<std::vector<double>>& rows)
        : PointSet(check_rows(rows), rows.empty() ? 0 : static_cast<int>(rows[0].size()),
                   flatten(rows)) {}

    int size() const { return n_; }
    int dim() const { return d_; }

    double operator()(int i, int j) const { return coords_[static_cast<std::size_t>(i) * d_ + j]; }

    std::span<const double> point(int i) const {
        return {row_ptr(i), static_cast<std::size_t>(d_)};
    }

    std::span<const double> coords() const { return coords_; }
    double norm_sq(int i) const { return norms_sq_[i]; }
    const std::vector<double>& norms_sq() const { return norms_sq_; }

private:
    static int check_rows(const std::vector<std::vector<double>>& rows) {
        if (rows.empty())
            throw std::invalid_argument("PointSet: empty input");
        const std::size_t d = rows[0].size();
        for (const auto& r : rows)
            if (r.size() != d)
                throw std::invalid_argument("PointSet: inconsistent row lengths");
        return static_cast<int>(rows.size());
    }

    static std::vector<double> flatten(const std::vector<std::vector<double>>& rows) {
        std::vector<double> flat;
        flat.reserve(rows.size() * (rows.empty() ? 0 : rows[0].size()));
        for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
        return flat;
    }

    const double* row_ptr(int i) const { return coords_.data() + static_cast<std::size_t>(i) * d_; }

    int n_ = 0;
    int d_ = 0;
    std::vector<double> coords_;
    std::vector<double> norms_sq_;
};

/// Affine map x -> (x - center) * scale used to place a dataset inside the
/// unit ball. scale is strictly positive; apply() and invert() round-trip.
struct BallTransform {
    std::vector<double> center;
    double scale = 1.0;

    std::vector<double> apply(std::span<const double> x) const {
        std::vector<double> out(x.size());
        for (std::size_t j = 0; j < x.size(); ++j) out[j] = (x[j] - center[j]) * scale;
        return out;
    }

    std::vector<double> invert(std::span<const double> y) const {
        std::vector<double> out(y.size());
        for (std::size_t j = 0; j < y.size(); ++j) out[j] = y[j] / scale + center[j];
        return out;
    }
};

/// Translate to the bounding-box midpoint and scale so every point has norm
/// at most 1. scale falls back to 1 when all points coincide with the center.
inline std::pair<PointSet, BallTransform> normalize_to_unit_ball(
    const std::vector<std::vector<double>>& rows) {
    if (rows.empty())
        throw std::invalid_argument("normalize_to_unit_ball: empty input");
    const std::size_t d = rows[0].size();
    if (d == 0)
        throw std::invalid_argument("normalize_to_unit_ball: zero-dimensional input");
    for (const auto& r : rows) {
        if (r.size() != d)
            throw std::invalid_argument("normalize_to_unit_ball: inconsistent row lengths");
        for (double v : r)
            if (!std::isfinite(v))
                throw std::invalid_argument("normalize_to_unit_ball: non-finite value");
    }

    std::vector<double> lo(rows[0]), hi(rows[0]);
    for (const auto& r : rows)
        for (std::size_t j = 0; j < d; ++j) {
            lo[j] = std::min(lo[j], r[j]);
            hi[j] = std::max(hi[j], r[j]);
        }

    BallTransform t;
    t.center.resize(d);
    for (std::size_t j = 0; j < d; ++j) t.center[j] = 0.5 * (lo[j] + hi[j]);

    double max_norm = 0.0;
    for (const auto& r : rows) {
        double s = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            const double v = r[j] - t.center[j];
            s += v * v;
        }
        max_norm = std::max(max_norm, std::sqrt(s));
    }
    t.scale = max_norm > 0.0 ? 1.0 / max_norm : 1.0;

    std::vector<double> flat;
    flat.reserve(rows.size() * d);
    for (const auto& r : rows)
        for (std::size_t j = 0; j < d; ++j) flat.push_back((r[j] - t.center[j]) * t.scale);

    return {PointSet(static_cast<int>(rows.size()), static_cast<int>(d), std::move(flat)), t};
}

} // namespace hullcode
