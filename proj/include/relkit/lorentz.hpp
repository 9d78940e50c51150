#pragma once

// Lorentz and Galilei groups as parameterized matrix groups: membership,
// component classification, polar decomposition into boost times rotation,
// composition and inversion on the (beta, D) parameter space, and a
// constructive factorization into reflections for general O(p,q).

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "core.hpp"

namespace relkit {

using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Vec3 = Eigen::Vector3d;

inline Mat4 minkowski() {
    Mat4 g = Mat4::Identity();
    g(1, 1) = g(2, 2) = g(3, 3) = -1.0;
    return g;
}

inline double inf_norm(const Eigen::Ref<const Eigen::MatrixXd>& a) {
    return a.cwiseAbs().maxCoeff();
}

enum class ComponentTag {
    ProperOrtho,
    ImproperOrtho,
    ProperAntichron,
    ImproperAntichron,
};

struct BoostRotationParams {
    Vec3 beta = Vec3::Zero();  // |beta| < 1
    Mat3 D = Mat3::Identity(); // member of SO(3)
};

struct GalileiParams {
    Vec3 v = Vec3::Zero();
    Mat3 D = Mat3::Identity();
};

inline double gamma_of(const Vec3& beta) {
    const double b2 = beta.squaredNorm();
    if (b2 >= 1.0)
        throw std::domain_error("gamma_of: superluminal velocity parameter");
    return 1.0 / std::sqrt(1.0 - b2);
}

// Symmetric boost block form: spatial part 1 + gamma^2/(1+gamma) beta beta^T,
// regular as beta -> 0.
inline Mat4 boost(const Vec3& beta) {
    const double gamma = gamma_of(beta);
    Mat4 B = Mat4::Identity();
    B(0, 0) = gamma;
    for (int i = 0; i < 3; ++i) {
        B(0, i + 1) = B(i + 1, 0) = gamma * beta[i];
        for (int j = 0; j < 3; ++j)
            B(i + 1, j + 1) = (i == j ? 1.0 : 0.0) +
                              gamma * gamma / (1.0 + gamma) * beta[i] * beta[j];
    }
    return B;
}

inline void require_so3(const Mat3& D, double tol = 1e-9) {
    if (inf_norm(D.transpose() * D - Mat3::Identity()) > tol)
        throw std::invalid_argument("rotation: matrix is not orthogonal");
    if (D.determinant() < 0.0)
        throw std::invalid_argument("rotation: matrix is orientation reversing");
}

inline Mat4 rotation(const Mat3& D, double tol = 1e-9) {
    require_so3(D, tol);
    Mat4 R = Mat4::Identity();
    R.block<3, 3>(1, 1) = D;
    return R;
}

inline std::pair<bool, ComponentTag> classify(const Mat4& L, double tol = 1e-9) {
    const Mat4 g = minkowski();
    const bool member = inf_norm(L.transpose() * g * L - g) <= tol;
    const bool proper = L.determinant() > 0.0;
    const bool ortho = L(0, 0) > 0.0; // |L00| >= 1 for members, no tolerance needed
    ComponentTag tag;
    if (proper)
        tag = ortho ? ComponentTag::ProperOrtho : ComponentTag::ProperAntichron;
    else
        tag = ortho ? ComponentTag::ImproperOrtho : ComponentTag::ImproperAntichron;
    return {member, tag};
}

struct PolarDecomposition {
    Mat4 B;
    Mat4 R;
    BoostRotationParams params;
};

// Closed-form polar split of a proper orthochronous L written in 1+3 block
// form with gamma = L00, a_i = L0i, b_i = Li0 and spatial block M:
//   B has spatial part 1 + b b^T/(1+gamma), R embeds D = M - b a^T/(1+gamma).
inline PolarDecomposition polar_decompose(const Mat4& L, double tol = 1e-9) {
    auto [member, tag] = classify(L, tol);
    if (!member)
        throw std::invalid_argument("polar_decompose: not a Lorentz matrix");
    if (tag != ComponentTag::ProperOrtho)
        throw std::invalid_argument("polar_decompose: wrong component");
    const double gamma = L(0, 0);
    Vec3 a, b;
    for (int i = 0; i < 3; ++i) {
        a[i] = L(0, i + 1);
        b[i] = L(i + 1, 0);
    }
    const Mat3 M = L.block<3, 3>(1, 1);

    Mat4 B = Mat4::Identity();
    B(0, 0) = gamma;
    for (int i = 0; i < 3; ++i) {
        B(0, i + 1) = B(i + 1, 0) = b[i];
        for (int j = 0; j < 3; ++j)
            B(i + 1, j + 1) = (i == j ? 1.0 : 0.0) + b[i] * b[j] / (1.0 + gamma);
    }
    const Mat3 D = M - b * a.transpose() / (1.0 + gamma);
    Mat4 R = Mat4::Identity();
    R.block<3, 3>(1, 1) = D;
    return {B, R, {b / gamma, D}};
}

inline Mat4 to_matrix(const BoostRotationParams& p) {
    return boost(p.beta) * rotation(p.D);
}

// Relativistic velocity composition u * v: parallel part adds with the usual
// denominator, perpendicular part is suppressed by 1/gamma_u.
inline Vec3 star(const Vec3& u, const Vec3& v) {
    const double u2 = u.squaredNorm();
    if (u2 >= 1.0 || v.squaredNorm() >= 1.0)
        throw std::domain_error("star: superluminal velocity parameter");
    if (u2 == 0.0)
        return v;
    const double inv_gamma = std::sqrt(1.0 - u2);
    const Vec3 v_par = (v.dot(u) / u2) * u;
    const Vec3 v_perp = v - v_par;
    return (u + v_par + inv_gamma * v_perp) / (1.0 + u.dot(v));
}

// Rotation generated when two boosts compose: B(u)B(v) = B(u*v) R(T[u,v]).
inline Mat3 thomas_rotation(const Vec3& u, const Vec3& v) {
    const Mat4 prod = boost(-star(u, v)) * boost(u) * boost(v);
    return prod.block<3, 3>(1, 1);
}

inline BoostRotationParams compose_params(const BoostRotationParams& p1,
                                          const BoostRotationParams& p2) {
    const Vec3 w = p1.D * p2.beta;
    return {star(p1.beta, w), thomas_rotation(p1.beta, w) * p1.D * p2.D};
}

inline BoostRotationParams invert_params(const BoostRotationParams& p) {
    const Mat3 Dinv = p.D.transpose();
    return {-(Dinv * p.beta), Dinv};
}

inline Mat4 galilei_matrix(const GalileiParams& p) {
    Mat4 G = Mat4::Identity();
    for (int i = 0; i < 3; ++i) G(i + 1, 0) = p.v[i];
    G.block<3, 3>(1, 1) = p.D;
    return G;
}

inline GalileiParams galilei_compose(const GalileiParams& p1, const GalileiParams& p2) {
    return {p1.v + p1.D * p2.v, p1.D * p2.D};
}

inline GalileiParams galilei_invert(const GalileiParams& p) {
    const Mat3 Dinv = p.D.transpose();
    return {-(Dinv * p.v), Dinv};
}

namespace detail {

inline double form_dot(const Metric& m, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    double s = 0.0;
    for (int i = 0; i < m.n; ++i) s += m.sign(i) * x[i] * y[i];
    return s;
}

inline Eigen::MatrixXd reflection_matrix(const Metric& m, const Eigen::VectorXd& v) {
    const int n = m.n;
    Eigen::VectorXd gv(n);
    for (int i = 0; i < n; ++i) gv[i] = m.sign(i) * v[i];
    return Eigen::MatrixXd::Identity(n, n) -
           (2.0 / form_dot(m, v, v)) * v * gv.transpose();
}

}  // namespace detail

// Factors an orthogonal map of a nondegenerate symmetric form into at most
// 2n-1 reflections along non-null vectors, outermost factor first.  Column j
// is sent to e_j by one reflection along e_j - w when that vector is non-null,
// otherwise by two (along e_j + w, then e_j); at least one branch is always
// well conditioned since the two squared norms add up to 4 e_j^2.
inline std::vector<SpacetimeVector> cartan_dieudonne_factor(const Eigen::MatrixXd& L,
                                                            const Metric& m,
                                                            double tol = 1e-9) {
    const int n = m.n;
    if (L.rows() != n || L.cols() != n)
        throw std::invalid_argument("cartan_dieudonne_factor: size mismatch");
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) G(i, i) = m.sign(i);
    if (inf_norm(L.transpose() * G * L - G) > tol)
        throw std::invalid_argument("cartan_dieudonne_factor: not orthogonal for the form");

    auto as_vector = [n](const Eigen::VectorXd& v) {
        return SpacetimeVector{std::vector<double>(v.data(), v.data() + n)};
    };

    // A reflection itself factors as one vector: L - 1 then has rank one with
    // every column proportional to the mirror normal.
    const Eigen::MatrixXd A = L - Eigen::MatrixXd::Identity(n, n);
    if (inf_norm(A) > 1e-12) {
        int best = 0;
        for (int c = 1; c < n; ++c)
            if (A.col(c).norm() > A.col(best).norm()) best = c;
        const Eigen::VectorXd v = A.col(best);
        if (std::abs(detail::form_dot(m, v, v)) > 1e-12 &&
            inf_norm(detail::reflection_matrix(m, v) - L) <= 1e-10)
            return {as_vector(v)};
    }

    std::vector<SpacetimeVector> out;
    Eigen::MatrixXd cur = L;
    auto pull_out = [&](const Eigen::VectorXd& v) {
        cur = detail::reflection_matrix(m, v) * cur;
        out.push_back(as_vector(v));
    };
    for (int j = 0; j < n; ++j) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
        e[j] = 1.0;
        const Eigen::VectorXd w = cur.col(j);
        if (inf_norm(w - e) <= 1e-12) continue;
        const Eigen::VectorXd d = e - w;
        if (std::abs(detail::form_dot(m, d, d)) > 1e-8) {
            pull_out(d);
        } else {
            pull_out(e + w); // sends w to -e_j
            pull_out(e);     // sends -e_j to e_j
        }
    }
    return out;
}

}  // namespace relkit
