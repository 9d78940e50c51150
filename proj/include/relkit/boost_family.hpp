#pragma once

// One-parameter family of kinematics singled out by the relativity
// principle: planar boosts with a free constant k of dimension inverse
// velocity squared.  k < 0 gives Lorentz boosts with c = 1/sqrt(-k), k = 0
// the Galilei shear, k > 0 Euclidean rotations of the t-x plane with their
// compact velocity spectrum and composition paradoxes.

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace relkit {

using Mat2 = Eigen::Matrix2d;

// a(v) = 1/sqrt(1+k v^2), the positive root; also the common diagonal entry.
inline double boost_diagonal_k(double v, double k) {
    const double s = 1.0 + k * v * v;
    if (s <= 0.0)
        throw std::domain_error("boost_matrix_k: velocity outside the admissible spectrum");
    return 1.0 / std::sqrt(s);
}

// Unimodular planar boost acting on (t, x); transports coordinates, so for
// k < 0 it is the inverse of the corresponding velocity-v Lorentz boost.
inline Mat2 boost_matrix_k(double v, double k) {
    const double a = boost_diagonal_k(v, k);
    Mat2 A;
    A << a, k * v * a, -v * a, a;
    return A;
}

inline double compose_velocity_k(double v, double vp, double k) {
    const double denom = 1.0 - k * v * vp;
    if (denom == 0.0)
        throw std::overflow_error("compose_velocity_k: infinite composed velocity");
    return (v + vp) / denom;
}

enum class KinematicsKind { EuclideanRotations, Galilei, Lorentz };

struct KRegime {
    KinematicsKind kind;
    double c; // invariant speed for the Lorentz regime, else 0
};

inline KRegime classify_k(double k) {
    if (k > 0.0) return {KinematicsKind::EuclideanRotations, 0.0};
    if (k == 0.0) return {KinematicsKind::Galilei, 0.0};
    return {KinematicsKind::Lorentz, 1.0 / std::sqrt(-k)};
}

// Angle chart for the compact k > 0 spectrum; composition is angle addition.
inline double rotation_angle_k(double v, double k) {
    if (k <= 0.0)
        throw std::domain_error("rotation_angle_k: requires k > 0");
    return std::atan(std::sqrt(k) * v);
}

}  // namespace relkit
