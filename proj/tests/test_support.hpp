#pragma once

// Shared helpers for the test suites. The oracle-style helpers here are kept
// independent of the library implementations they are used to verify: the
// diameter is brute-forced over all pairs and the extreme-point scan is a
// direct loop over explicit coordinates.

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "hullcode/point_set.hpp"

namespace testsupport {

inline double dist(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double v = a[j] - b[j];
        s += v * v;
    }
    return std::sqrt(s);
}

inline double norm(std::span<const double> a) {
    double s = 0.0;
    for (double v : a) s += v * v;
    return std::sqrt(s);
}

/// Brute-force all-pairs diameter.
inline double exact_diameter(const hullcode::PointSet& ps) {
    double best = 0.0;
    for (int i = 0; i < ps.size(); ++i)
        for (int j = i + 1; j < ps.size(); ++j)
            best = std::max(best, dist(ps.point(i), ps.point(j)));
    return best;
}

/// Direct argmax of <p_i, v>, ties to the lowest index.
inline int scan_extreme(const hullcode::PointSet& ps, std::span<const double> v) {
    int best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < ps.size(); ++i) {
        double s = 0.0;
        auto p = ps.point(i);
        for (std::size_t j = 0; j < v.size(); ++j) s += v[j] * p[j];
        if (s > best_score) {
            best_score = s;
            best = i;
        }
    }
    return best;
}

/// Deterministic test RNG (independent of the library generators).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    int uniform_int(int lo, int hi) { // inclusive
        return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    std::vector<double> gaussian_vec(int d) {
        std::vector<double> v(d);
        for (int j = 0; j < d; ++j) {
            double u1 = uniform01();
            while (u1 <= 0.0) u1 = uniform01();
            v[j] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * uniform01());
        }
        return v;
    }

private:
    std::mt19937_64 gen_;
};

/// Planted cover instance: k anchor points plus n inner points lying within
/// eps of the anchors' hull, everything inside the unit ball.
struct PlantedCover {
    hullcode::PointSet pin;
    hullcode::PointSet pout; // the anchors
};

inline PlantedCover planted_cover(int k, int n, int d, double eps, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::vector<double>> anchors;
    while (static_cast<int>(anchors.size()) < k) {
        auto g = rng.gaussian_vec(d);
        const double gn = norm(g);
        if (gn <= 0) continue;
        std::vector<double> a(d);
        for (int j = 0; j < d; ++j) a[j] = 0.8 * g[j] / gn;
        bool separated = true;
        for (const auto& b : anchors)
            if (dist(a, b) < 0.6) separated = false;
        if (separated) anchors.push_back(std::move(a));
    }
    std::vector<std::vector<double>> inner;
    for (int i = 0; i < n; ++i) {
        std::vector<double> w(k);
        double sum = 0.0;
        for (int c = 0; c < k; ++c) {
            w[c] = -std::log(std::max(rng.uniform01(), 1e-300));
            sum += w[c];
        }
        std::vector<double> p(d, 0.0);
        for (int c = 0; c < k; ++c)
            for (int j = 0; j < d; ++j) p[j] += (w[c] / sum) * anchors[c][j];
        auto g = rng.gaussian_vec(d);
        const double gn = norm(g);
        const double mag = 0.9 * eps * rng.uniform01();
        if (gn > 0)
            for (int j = 0; j < d; ++j) p[j] += mag * g[j] / gn;
        inner.push_back(std::move(p));
    }
    return {hullcode::PointSet(inner), hullcode::PointSet(anchors)};
}

/// Random points in the unit ball, written directly for test independence.
inline hullcode::PointSet random_ball(int n, int d, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(n) * d);
    for (int i = 0; i < n; ++i) {
        auto g = rng.gaussian_vec(d);
        const double gn = norm(g);
        const double r = std::pow(rng.uniform01(), 1.0 / d);
        for (int j = 0; j < d; ++j) flat.push_back(gn > 0 ? r * g[j] / gn : 0.0);
    }
    return hullcode::PointSet(n, d, std::move(flat));
}

} // namespace testsupport
