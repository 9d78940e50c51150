#pragma once

// Timelike worldlines parameterized by proper time, given either in closed
// form or as sampled velocity curves with local cubic interpolation.

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "lorentz.hpp"

namespace relkit {

using Vec4 = Eigen::Vector4d;

// Minkowski product of component vectors, signature (+,-,-,-).
inline double mdot(const Vec4& x, const Vec4& y) {
    return x[0] * y[0] - x[1] * y[1] - x[2] * y[2] - x[3] * y[3];
}

struct WorldLine {
    std::function<Vec4(double)> position;     // z(tau)
    std::function<Vec4(double)> velocity;     // dz/dtau, normalized to c^2
    std::function<Vec4(double)> acceleration; // d^2z/dtau^2
    double c = 1.0;
    std::function<Vec4(double)> jerk;         // optional d^3z/dtau^3
};

inline WorldLine inertial_worldline(const Vec4& z0, const Vec3& beta, double c = 1.0) {
    const double gamma = gamma_of(beta);
    const Vec4 u(c * gamma, c * gamma * beta[0], c * gamma * beta[1], c * gamma * beta[2]);
    return {[z0, u](double tau) { return Vec4(z0 + tau * u); },
            [u](double) { return u; },
            [](double) { return Vec4(Vec4::Zero()); },
            c,
            [](double) { return Vec4(Vec4::Zero()); }};
}

// Uniformly accelerated worldline through (0, x0, 0, 0): the hyperbola
// x^2 - (ct)^2 = x0^2 in the right wedge, with proper acceleration c^2/x0.
inline WorldLine hyperbolic_worldline(double x0, double c = 1.0) {
    if (!(x0 > 0.0)) throw std::domain_error("hyperbolic_worldline: x0 must be positive");
    auto pos = [=](double tau) {
        const double s = c * tau / x0;
        return Vec4(x0 * std::sinh(s), x0 * std::cosh(s), 0.0, 0.0);
    };
    auto vel = [=](double tau) {
        const double s = c * tau / x0;
        return Vec4(c * std::cosh(s), c * std::sinh(s), 0.0, 0.0);
    };
    auto acc = [=](double tau) {
        const double s = c * tau / x0, k = c * c / x0;
        return Vec4(k * std::sinh(s), k * std::cosh(s), 0.0, 0.0);
    };
    auto jrk = [=](double tau) {
        const double s = c * tau / x0, k = c * c * c / (x0 * x0);
        return Vec4(k * std::cosh(s), k * std::sinh(s), 0.0, 0.0);
    };
    return {pos, vel, acc, c, jrk};
}

// Circular motion in the x-y plane with speed beta*c and coordinate angular
// velocity omega; proper time tau relates to coordinate time by t = gamma tau.
inline WorldLine circular_worldline(double beta, double omega, double c = 1.0) {
    if (beta < 0.0 || beta >= 1.0)
        throw std::domain_error("circular_worldline: speed must lie in [0,1)");
    if (omega == 0.0)
        throw std::invalid_argument("circular_worldline: omega must be nonzero");
    const double gamma = 1.0 / std::sqrt(1.0 - beta * beta);
    const double radius = beta * c / omega;
    auto pos = [=](double tau) {
        const double t = gamma * tau;
        return Vec4(c * t, radius * std::cos(omega * t), radius * std::sin(omega * t), 0.0);
    };
    auto vel = [=](double tau) {
        const double t = gamma * tau;
        return Vec4(gamma * c, -gamma * beta * c * std::sin(omega * t),
                    gamma * beta * c * std::cos(omega * t), 0.0);
    };
    auto acc = [=](double tau) {
        const double t = gamma * tau;
        const double f = gamma * gamma * beta * c * omega;
        return Vec4(0.0, -f * std::cos(omega * t), -f * std::sin(omega * t), 0.0);
    };
    auto jrk = [=](double tau) {
        const double t = gamma * tau;
        const double f = gamma * gamma * gamma * beta * c * omega * omega;
        return Vec4(0.0, f * std::sin(omega * t), -f * std::cos(omega * t), 0.0);
    };
    return {pos, vel, acc, c, jrk};
}

// Piecewise-cubic Hermite curve through samples with centered (Catmull-Rom
// style) tangents; periodic curves wrap their neighbor stencil.
class CubicPath {
  public:
    CubicPath(std::vector<double> tau, std::vector<Vec3> pts, bool periodic)
        : tau_(std::move(tau)), pts_(std::move(pts)), periodic_(periodic) {
        if (tau_.size() != pts_.size() || tau_.size() < 2)
            throw std::invalid_argument("CubicPath: need matching sample arrays, length >= 2");
        for (std::size_t k = 1; k < tau_.size(); ++k)
            if (!(tau_[k] > tau_[k - 1]))
                throw std::invalid_argument("CubicPath: timestamps must strictly increase");
        tangents_.resize(pts_.size());
        const std::size_t n = pts_.size();
        for (std::size_t k = 0; k < n; ++k) {
            if (periodic_) {
                // Wrapped central difference; sample n-1 duplicates sample 0.
                const std::size_t prev = k == 0 ? n - 2 : k - 1;
                const std::size_t next = k == n - 1 ? 1 : k + 1;
                double dt_prev = tau_[k] - tau_[prev];
                double dt_next = tau_[next] - tau_[k];
                if (k == 0) dt_prev = tau_[n - 1] - tau_[n - 2];
                if (k == n - 1) dt_next = tau_[1] - tau_[0];
                tangents_[k] = (pts_[next] - pts_[prev]) / (dt_prev + dt_next);
            } else if (k == 0) {
                tangents_[k] = (pts_[1] - pts_[0]) / (tau_[1] - tau_[0]);
            } else if (k == n - 1) {
                tangents_[k] = (pts_[n - 1] - pts_[n - 2]) / (tau_[n - 1] - tau_[n - 2]);
            } else {
                tangents_[k] = (pts_[k + 1] - pts_[k - 1]) / (tau_[k + 1] - tau_[k - 1]);
            }
        }
    }

    double t_min() const { return tau_.front(); }
    double t_max() const { return tau_.back(); }

    struct Sample {
        Vec3 value;
        Vec3 derivative;
    };

    Sample eval(double t) const {
        std::size_t k = segment(t);
        const double h = tau_[k + 1] - tau_[k];
        const double s = (t - tau_[k]) / h;
        const double s2 = s * s, s3 = s2 * s;
        const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
        const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
        const double d00 = (6 * s2 - 6 * s) / h, d10 = (3 * s2 - 4 * s + 1) / h;
        const double d01 = (-6 * s2 + 6 * s) / h, d11 = (3 * s2 - 2 * s) / h;
        Sample out;
        out.value = h00 * pts_[k] + h10 * h * tangents_[k] + h01 * pts_[k + 1] +
                    h11 * h * tangents_[k + 1];
        out.derivative = d00 * pts_[k] + d10 * h * tangents_[k] + d01 * pts_[k + 1] +
                         d11 * h * tangents_[k + 1];
        return out;
    }

  private:
    std::size_t segment(double t) const {
        if (t < tau_.front() || t > tau_.back())
            throw std::domain_error("CubicPath: evaluation outside sample range");
        auto it = std::upper_bound(tau_.begin(), tau_.end(), t);
        std::size_t k = static_cast<std::size_t>(it - tau_.begin());
        if (k > 0) --k;
        if (k >= tau_.size() - 1) k = tau_.size() - 2;
        return k;
    }

    std::vector<double> tau_;
    std::vector<Vec3> pts_;
    std::vector<Vec3> tangents_;
    bool periodic_;
};

}  // namespace relkit
