#pragma once

// The open unit ball with relativistic velocity composition forms a
// non-associative loop; the Thomas rotation measures the failure of
// commutativity and associativity.  Closed forms for the rotation angle,
// its maximum over the enclosed angle, quasigroup solutions, and the
// moduli of composed and relative velocities.

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lorentz.hpp"

namespace relkit {

inline bool in_unit_ball(const Vec3& beta) { return beta.squaredNorm() < 1.0; }

// Rotation factor of boost(b1) boost(b2): read gamma, a, b, M off the
// product and apply D = M - b a^T / (1 + gamma).
inline Mat3 gyr(const Vec3& b1, const Vec3& b2) {
    const Mat4 prod = boost(b1) * boost(b2);
    const double gamma = prod(0, 0);
    Vec3 a, b;
    for (int i = 0; i < 3; ++i) {
        a[i] = prod(0, i + 1);
        b[i] = prod(i + 1, 0);
    }
    return prod.block<3, 3>(1, 1) - b * a.transpose() / (1.0 + gamma);
}

// Signed rotation angle in span{b1, b2}, oriented by b1 x b2.  atan2 on the
// in-plane components keeps the sense that arccos of the trace would lose;
// the Thomas rotation comes out negative in this orientation.
inline double gyr_angle(const Vec3& b1, const Vec3& b2) {
    Vec3 n = b1.cross(b2);
    const double nn = n.norm();
    if (nn <= 1e-14 * b1.norm() * b2.norm() || nn == 0.0) return 0.0;
    n /= nn;
    const Vec3 u = b1.normalized();
    const Vec3 tu = gyr(b1, b2) * u;
    return std::atan2(n.dot(u.cross(tu)), u.dot(tu));
}

// Principal rotation angle as a function of the two gamma factors and the
// angle phi enclosed by the velocities.
inline double thomas_angle(double gamma1, double gamma2, double phi) {
    if (gamma1 < 1.0 || gamma2 < 1.0)
        throw std::domain_error("thomas_angle: gamma factors must be >= 1");
    const double s = std::sin(phi), c = std::cos(phi);
    const double denom = 1.0 + gamma1 * gamma2 +
                         std::sqrt((gamma1 * gamma1 - 1.0) * (gamma2 * gamma2 - 1.0)) * c;
    const double cos_theta = 1.0 - (gamma1 - 1.0) * (gamma2 - 1.0) * s * s / denom;
    return std::acos(std::clamp(cos_theta, -1.0, 1.0));
}

struct ThomasMax {
    double phi_m;   // enclosed angle maximizing the rotation, > pi/2
    double theta_m; // maximal rotation angle, cos(theta_m) = -cos(2 phi_m)
};

inline ThomasMax thomas_angle_max(double gamma1, double gamma2) {
    if (gamma1 < 1.0 || gamma2 < 1.0)
        throw std::domain_error("thomas_angle_max: gamma factors must be >= 1");
    const double q2 = (gamma1 - 1.0) * (gamma2 - 1.0) / ((gamma1 + 1.0) * (gamma2 + 1.0));
    const double q = std::sqrt(q2);
    return {std::acos(std::clamp(-q, -1.0, 1.0)),
            std::acos(std::clamp(1.0 - 2.0 * q2, -1.0, 1.0))};
}

// Unique solutions of star(b1, b2) = b3 for either factor.
inline Vec3 solve_left(const Vec3& b2, const Vec3& b3) {
    return star(b3, -(gyr(b3, b2) * b2));
}

inline Vec3 solve_right(const Vec3& b1, const Vec3& b3) {
    return star(-b1, b3);
}

inline double composed_speed(const Vec3& b1, const Vec3& b2) {
    const double num = (b1 + b2).squaredNorm() - b1.cross(b2).squaredNorm();
    const double den = 1.0 + b1.dot(b2);
    return std::sqrt(std::max(0.0, num)) / den;
}

// Modulus of the velocity of one frame relative to another, both given in a
// third frame; symmetric under exchange of its arguments.
inline double relative_speed(const Vec3& b1, const Vec3& b3) {
    const double num = (b3 - b1).squaredNorm() - b3.cross(b1).squaredNorm();
    const double den = 1.0 - b3.dot(b1);
    return std::sqrt(std::max(0.0, num)) / den;
}

}  // namespace relkit
