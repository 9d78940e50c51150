#pragma once

// Velocity space as the hyperbola of four-velocities with its constant
// negative curvature metric: radial charts, rapidity as geodesic distance,
// the hyperbolic cosine law, Fermi-Walker transport along worldlines, and
// the holonomy of closed hodographs.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "velocity.hpp"
#include "worldline.hpp"

namespace relkit {

struct HyperbolicPoint {
    Vec3 beta = Vec3::Zero();
    double c = 1.0;

    Vec4 four_velocity() const {
        const double gamma = gamma_of(beta);
        return Vec4(c * gamma, c * gamma * beta[0], c * gamma * beta[1], c * gamma * beta[2]);
    }
};

inline double rapidity(double beta) {
    if (beta < 0.0 || beta >= 1.0)
        throw std::domain_error("rapidity: modulus must lie in [0,1)");
    return std::atanh(beta);
}

enum class RadialKind { Beta, R, SmallR, Rho };

// Radial coordinate plus polar angles; the four radial choices cover the
// same space with ranges beta, r in [0,1) and R, rho in [0,inf).
struct RadialChart {
    RadialKind kind = RadialKind::Beta;
    double radial = 0.0;
    double theta = 0.0;
    double phi = 0.0;
};

namespace detail {

inline double chart_to_beta(RadialKind kind, double value) {
    switch (kind) {
        case RadialKind::Beta:
            if (value < 0.0 || value >= 1.0)
                throw std::domain_error("chart_convert: beta out of range [0,1)");
            return value;
        case RadialKind::R:
            if (value < 0.0)
                throw std::domain_error("chart_convert: R out of range [0,inf)");
            return value / std::sqrt(1.0 + value * value);
        case RadialKind::SmallR:
            if (value < 0.0 || value >= 1.0)
                throw std::domain_error("chart_convert: r out of range [0,1)");
            return 2.0 * value / (1.0 + value * value);
        case RadialKind::Rho:
            if (value < 0.0)
                throw std::domain_error("chart_convert: rho out of range [0,inf)");
            return std::tanh(value);
    }
    throw std::logic_error("chart_convert: unknown chart");
}

inline double beta_to_chart(RadialKind kind, double beta) {
    switch (kind) {
        case RadialKind::Beta:
            return beta;
        case RadialKind::R:
            return beta / std::sqrt(1.0 - beta * beta);
        case RadialKind::SmallR:
            return beta / (1.0 + std::sqrt(1.0 - beta * beta));
        case RadialKind::Rho:
            return std::atanh(beta);
    }
    throw std::logic_error("chart_convert: unknown chart");
}

}  // namespace detail

inline RadialChart chart_convert(const RadialChart& x, RadialKind target) {
    const double beta = detail::chart_to_beta(x.kind, x.radial);
    return {target, detail::beta_to_chart(target, beta), x.theta, x.phi};
}

// Squared line element at beta for displacement dbeta: the parallel part is
// weighted by gamma^4, the perpendicular part by gamma^2.
inline double metric_eval(const Vec3& beta, const Vec3& dbeta) {
    const double b2 = beta.squaredNorm();
    if (b2 >= 1.0)
        throw std::domain_error("metric_eval: point outside the unit ball");
    const double gamma2 = 1.0 / (1.0 - b2);
    Vec3 par = Vec3::Zero();
    if (b2 > 0.0) par = (dbeta.dot(beta) / b2) * beta;
    const Vec3 perp = dbeta - par;
    return gamma2 * gamma2 * par.squaredNorm() + gamma2 * perp.squaredNorm();
}

// The same line element in the four radial chart forms, for a spherical
// displacement (d_radial, d_theta, d_phi) at the given chart point.
inline double radial_form_eval(const RadialChart& x, double d_radial, double d_theta,
                               double d_phi) {
    const double ang2 = d_theta * d_theta +
                        std::sin(x.theta) * std::sin(x.theta) * d_phi * d_phi;
    const double v = x.radial;
    switch (x.kind) {
        case RadialKind::Beta: {
            if (v < 0.0 || v >= 1.0) throw std::domain_error("radial_form_eval: beta range");
            const double one = 1.0 - v * v;
            return d_radial * d_radial / (one * one) + v * v / one * ang2;
        }
        case RadialKind::R:
            if (v < 0.0) throw std::domain_error("radial_form_eval: R range");
            return d_radial * d_radial / (1.0 + v * v) + v * v * ang2;
        case RadialKind::SmallR: {
            if (v < 0.0 || v >= 1.0) throw std::domain_error("radial_form_eval: r range");
            const double f = 2.0 / (1.0 - v * v);
            return f * f * (d_radial * d_radial + v * v * ang2);
        }
        case RadialKind::Rho:
            if (v < 0.0) throw std::domain_error("radial_form_eval: rho range");
            return d_radial * d_radial + std::sinh(v) * std::sinh(v) * ang2;
    }
    throw std::logic_error("radial_form_eval: unknown chart");
}

// Geodesic distance on the unit-curvature hyperbola: the rapidity of the
// relative speed.  Symmetric, zero only for equal points.
inline double geodesic_distance(const HyperbolicPoint& p1, const HyperbolicPoint& p2) {
    return std::atanh(relative_speed(p1.beta, p2.beta));
}

inline double hyperbolic_cosine_law(double rho1, double rho2, double phi) {
    if (rho1 < 0.0 || rho2 < 0.0)
        throw std::domain_error("hyperbolic_cosine_law: side lengths must be >= 0");
    const double c3 = std::cosh(rho1) * std::cosh(rho2) +
                      std::sinh(rho1) * std::sinh(rho2) * std::cos(phi);
    return std::acosh(std::max(1.0, c3));
}

namespace detail {

template <typename Deriv>
Vec4 rk4_step(const Deriv& f, double t, double h, const Vec4& x) {
    const Vec4 k1 = f(t, x);
    const Vec4 k2 = f(t + 0.5 * h, Vec4(x + 0.5 * h * k1));
    const Vec4 k3 = f(t + 0.5 * h, Vec4(x + 0.5 * h * k2));
    const Vec4 k4 = f(t + h, Vec4(x + h * k3));
    return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

inline void require_finite(const Vec4& x, double tau, const char* who) {
    if (!x.allFinite())
        throw std::runtime_error(std::string(who) + ": non-finite state at tau=" +
                                 std::to_string(tau));
}

}  // namespace detail

// Integrates the transport with vanishing Fermi-Walker derivative,
// X' = (g(X,u) a - g(X,a) u)/c^2, with a fixed-step classical fourth-order
// scheme.  Preserves all metric products along the way.
inline Vec4 fermi_walker_transport(const WorldLine& wl, const Vec4& x0, double tau0,
                                   double tau1, int steps = 2000) {
    if (steps <= 0)
        throw std::invalid_argument("fermi_walker_transport: steps must be positive");
    const double c2 = wl.c * wl.c;
    auto f = [&](double tau, const Vec4& x) {
        const Vec4 u = wl.velocity(tau);
        const Vec4 a = wl.acceleration(tau);
        return Vec4((mdot(x, u) * a - mdot(x, a) * u) / c2);
    };
    Vec4 x = x0;
    const double h = (tau1 - tau0) / steps;
    for (int k = 0; k < steps; ++k) {
        x = detail::rk4_step(f, tau0 + k * h, h, x);
        detail::require_finite(x, tau0 + (k + 1) * h, "fermi_walker_transport");
    }
    return x;
}

struct Hodograph {
    std::vector<double> tau;  // strictly increasing
    std::vector<Vec3> beta;   // velocity samples, each inside the unit ball
    double c = 1.0;
};

inline Hodograph circular_hodograph(double beta, double omega, int samples, double c = 1.0) {
    const WorldLine wl = circular_worldline(beta, omega, c);
    const double gamma = 1.0 / std::sqrt(1.0 - beta * beta);
    const double period = 2.0 * M_PI / (omega * gamma); // one orbit in proper time
    Hodograph h;
    h.c = c;
    for (int k = 0; k <= samples; ++k) {
        const double t = period * k / samples;
        const Vec4 u = wl.velocity(t);
        h.tau.push_back(t);
        h.beta.push_back(Vec3(u[1], u[2], u[3]) / u[0]);
    }
    return h;
}

// Parallel transport on the velocity hyperbola: the ambient derivative
// projected back to the tangent space gives X' = -u g(X, u')/c^2, which
// keeps g(X, u) = 0 exactly.  Transports the boosted spatial triad around
// the closed loop and returns its net rotation, columns expressing the
// transported vectors in the initial frame.
inline Mat3 hodograph_holonomy(const Hodograph& h) {
    const std::size_t n = h.tau.size();
    if (n < 3 || h.beta.size() != n)
        throw std::invalid_argument("hodograph_holonomy: need at least 3 matching samples");
    for (std::size_t k = 0; k < n; ++k)
        if (h.beta[k].squaredNorm() >= 1.0)
            throw std::invalid_argument("hodograph_holonomy: sample outside the unit ball");
    const double c = h.c, c2 = c * c;
    const HyperbolicPoint first{h.beta.front(), c}, last{h.beta.back(), c};
    if ((first.four_velocity() - last.four_velocity()).cwiseAbs().maxCoeff() > 1e-9 * c)
        throw std::invalid_argument("hodograph_holonomy: loop endpoints do not match");

    const CubicPath path(h.tau, h.beta, /*periodic=*/true);
    auto u_of = [&](double t) {
        const auto s = path.eval(t);
        const double gamma = gamma_of(s.value);
        return Vec4(c * gamma, c * gamma * s.value[0], c * gamma * s.value[1],
                    c * gamma * s.value[2]);
    };
    auto udot_of = [&](double t) {
        const auto s = path.eval(t);
        const double gamma = gamma_of(s.value);
        const double gdot = gamma * gamma * gamma * s.value.dot(s.derivative);
        return Vec4(c * gdot,
                    c * (gdot * s.value[0] + gamma * s.derivative[0]),
                    c * (gdot * s.value[1] + gamma * s.derivative[1]),
                    c * (gdot * s.value[2] + gamma * s.derivative[2]));
    };
    auto f = [&](double t, const Vec4& x) {
        const Vec4 u = u_of(t);
        return Vec4(-u * mdot(x, udot_of(t)) / c2);
    };

    // Initial orthonormal triad spanning the tangent space at the start.
    const Mat4 B0 = boost(h.beta.front());
    Vec4 frame[3];
    for (int i = 0; i < 3; ++i) frame[i] = B0.col(i + 1);

    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double t = h.tau[k], step = h.tau[k + 1] - t;
        for (auto& x : frame) {
            x = detail::rk4_step(f, t, step, x);
            detail::require_finite(x, t + step, "hodograph_holonomy");
        }
    }

    Mat3 hol;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) hol(j, i) = -mdot(B0.col(j + 1), frame[i]);
    return hol;
}

}  // namespace relkit
