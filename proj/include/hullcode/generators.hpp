#pragma once

// Synthetic instance generators. All of them are deterministic per seed and
// produce identical bytes across platforms: the raw mt19937_64 stream is
// mapped to doubles directly instead of going through the (implementation
// defined) standard distributions.

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "hullcode/point_set.hpp"

namespace hullcode {

class DetRandom {
public:
    explicit DetRandom(std::uint64_t seed) : gen_(seed) {}

    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal via Box-Muller on the deterministic uniform stream.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    std::vector<double> unit_direction(int d) {
        std::vector<double> v(d);
        double norm = 0.0;
        do {
            norm = 0.0;
            for (int j = 0; j < d; ++j) {
                v[j] = normal();
                norm += v[j] * v[j];
            }
        } while (norm <= 0.0);
        norm = std::sqrt(norm);
        for (double& x : v) x /= norm;
        return v;
    }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// Uniform points in the unit ball (radial method).
inline PointSet gen_uniform_ball(int n, int d, std::uint64_t seed) {
    if (n < 1 || d < 1)
        throw std::invalid_argument("gen_uniform_ball: need n >= 1 and d >= 1");
    DetRandom rng(seed);
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(n) * d);
    for (int i = 0; i < n; ++i) {
        const auto dir = rng.unit_direction(d);
        const double radius = std::pow(rng.uniform01(), 1.0 / d);
        for (int j = 0; j < d; ++j) flat.push_back(radius * dir[j]);
    }
    return PointSet(n, d, std::move(flat));
}

struct KlinesInstance {
    PointSet points;
    // the 2k segment endpoints: a planted approximation of size 2k at
    // tolerance 2 * strip
    std::vector<std::vector<double>> endpoints;
    int k = 0;
    double strip = 0.0;
};

/// n points spread along k random segments inside the unit ball, displaced
/// orthogonally by at most `strip`. Segments are drawn inside radius
/// 1 - strip so the jittered points stay inside the ball.
inline KlinesInstance gen_klines(int k, int n, int d, double strip, std::uint64_t seed) {
    if (k < 1 || n < 2 * k || strip < 0.0 || d < 1)
        throw std::invalid_argument("gen_klines: need k >= 1, n >= 2k, strip >= 0");
    DetRandom rng(seed);
    const double r = std::max(1.0 - strip, 0.5);

    std::vector<std::vector<double>> ends;
    ends.reserve(2 * static_cast<std::size_t>(k));
    for (int line = 0; line < k; ++line) {
        for (int e = 0; e < 2; ++e) {
            const auto dir = rng.unit_direction(d);
            const double radius = r * std::pow(rng.uniform01(), 1.0 / d);
            std::vector<double> p(d);
            for (int j = 0; j < d; ++j) p[j] = radius * dir[j];
            ends.push_back(std::move(p));
        }
    }

    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(n) * d);
    for (int i = 0; i < n; ++i) {
        const int line = i % k;
        const auto& a = ends[2 * line];
        const auto& b = ends[2 * line + 1];
        const double t = rng.uniform01();
        std::vector<double> p(d);
        std::vector<double> axis(d);
        double axis_norm = 0.0;
        for (int j = 0; j < d; ++j) {
            p[j] = a[j] + t * (b[j] - a[j]);
            axis[j] = b[j] - a[j];
            axis_norm += axis[j] * axis[j];
        }
        if (strip > 0.0) {
            // jitter orthogonal to the segment direction
            auto noise = rng.unit_direction(d);
            if (axis_norm > 0.0) {
                double along = 0.0;
                for (int j = 0; j < d; ++j) along += noise[j] * axis[j];
                along /= axis_norm;
                double norm = 0.0;
                for (int j = 0; j < d; ++j) {
                    noise[j] -= along * axis[j];
                    norm += noise[j] * noise[j];
                }
                norm = std::sqrt(norm);
                if (norm > 0.0)
                    for (double& x : noise) x /= norm;
            }
            const double mag = strip * rng.uniform01();
            for (int j = 0; j < d; ++j) p[j] += mag * noise[j];
        }
        flat.insert(flat.end(), p.begin(), p.end());
    }

    KlinesInstance inst{PointSet(n, d, std::move(flat)), std::move(ends), k, strip};
    return inst;
}

/// Greedy packing on the unit sphere: sample uniform sphere points, keep
/// those at distance >= spacing from everything kept so far, stop after 1000
/// consecutive rejections. Every kept pair ends up >= spacing apart.
inline PointSet gen_sphere_packing(int d, double spacing, std::uint64_t seed) {
    if (d < 2 || d > 4)
        throw std::invalid_argument("gen_sphere_packing: d must be in {2,3,4}");
    if (!(spacing > 0.0 && spacing < 1.0))
        throw std::invalid_argument("gen_sphere_packing: spacing must be in (0,1)");
    DetRandom rng(seed);
    std::vector<std::vector<double>> kept;
    int rejections = 0;
    const double spacing_sq = spacing * spacing;
    while (rejections < 1000) {
        const auto cand = rng.unit_direction(d);
        bool ok = true;
        for (const auto& p : kept) {
            double d2 = 0.0;
            for (int j = 0; j < d; ++j) {
                const double v = cand[j] - p[j];
                d2 += v * v;
            }
            if (d2 < spacing_sq) {
                ok = false;
                break;
            }
        }
        if (ok) {
            kept.push_back(cand);
            rejections = 0;
        } else {
            ++rejections;
        }
    }
    return PointSet(kept);
}

} // namespace hullcode
