#pragma once

// Shared deterministic generators for the property tests. Every test seeds
// its own engine so cases stay order-independent.

#include <relkit/core.hpp>

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace testutil {

using relkit::Event;
using relkit::Metric;
using relkit::SpacetimeVector;

inline double uniform(std::mt19937_64& g, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline std::vector<double> random_components(std::mt19937_64& g, int n, double amp = 1.0) {
    std::vector<double> x(n);
    for (auto& e : x) e = uniform(g, -amp, amp);
    return x;
}

// Timelike vector with |spatial| <= frac * |x0|, random time orientation.
inline SpacetimeVector random_timelike(std::mt19937_64& g, int n = 4, double frac = 0.8) {
    std::vector<double> x(n);
    const double t = uniform(g, 0.5, 2.0) * (uniform(g, 0.0, 1.0) < 0.5 ? -1.0 : 1.0);
    x[0] = t;
    double s2 = 0.0;
    std::vector<double> sp(n - 1);
    for (auto& e : sp) {
        e = uniform(g, -1.0, 1.0);
        s2 += e * e;
    }
    const double target = frac * std::abs(t) * uniform(g, 0.1, 1.0);
    const double scale = s2 > 0.0 ? target / std::sqrt(s2) : 0.0;
    for (int i = 1; i < n; ++i) x[i] = sp[i - 1] * scale;
    return SpacetimeVector{std::move(x)};
}

inline SpacetimeVector future(SpacetimeVector v) {
    if (v[0] < 0.0)
        for (auto& e : v.x) e = -e;
    return v;
}

inline SpacetimeVector random_spacelike(std::mt19937_64& g, int n = 4) {
    // Spatial part dominates the time component.
    std::vector<double> x(n);
    double s2 = 0.0;
    for (int i = 1; i < n; ++i) {
        x[i] = uniform(g, 0.5, 2.0) * (uniform(g, 0.0, 1.0) < 0.5 ? -1.0 : 1.0);
        s2 += x[i] * x[i];
    }
    x[0] = uniform(g, -0.9, 0.9) * std::sqrt(s2) * 0.5;
    return SpacetimeVector{std::move(x)};
}

inline Event random_event(std::mt19937_64& g, int n = 4, double amp = 2.0) {
    return Event{random_components(g, n, amp)};
}

inline Eigen::Vector3d random_beta(std::mt19937_64& g, double max_speed = 0.95) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::Vector3d dir;
    do {
        dir = Eigen::Vector3d(gauss(g), gauss(g), gauss(g));
    } while (dir.norm() < 1e-6);
    dir.normalize();
    return uniform(g, 0.0, max_speed) * dir;
}

// Uniform-ish rotation from a normalized random quaternion.
inline Eigen::Matrix3d random_rotation(std::mt19937_64& g) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::Quaterniond q(gauss(g), gauss(g), gauss(g), gauss(g));
    q.normalize();
    return q.toRotationMatrix();
}

}  // namespace testutil
