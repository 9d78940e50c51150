#pragma once

// Born rigidity toolkit. A normalized timelike velocity field decomposes as
// grad u-flat = theta + omega + u-flat (x) a-flat / c^2; the flow is rigid
// exactly when theta vanishes, i.e. when the Lie derivative of the horizontal
// metric h along u is zero. This header provides that decomposition, finite
// difference rigidity residuals, the boost and rotation Killing flows, the
// hyperbolic orbit helpers, and the irrotational field generated by an
// arbitrary timelike worldline via its orthogonal-hyperplane foliation.

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "worldline.hpp"

namespace relkit {

inline Vec4 lower4(const Vec4& v) { return Vec4(v[0], -v[1], -v[2], -v[3]); }

// h_ab = u_a u_b / c^2 - g_ab: positive definite on the subspace g-orthogonal
// to u, and annihilates u itself.
inline Mat4 horizontal_metric(const Vec4& u, double c) {
    const Vec4 ul = lower4(u);
    return (ul * ul.transpose()) / (c * c) - minkowski();
}

// P(a,b) = delta_a^b - u_a u^b / c^2, acting on lower indices; P T P^T strips
// the components of a covariant 2-tensor along u.
inline Mat4 covariant_projector(const Vec4& u, double c) {
    return Mat4::Identity() - (lower4(u) * u.transpose()) / (c * c);
}

// A velocity field is the callable u plus its declared domain and metric
// context. The Jacobian entry J(mu, nu) = d u^mu / d x^nu is optional: when
// absent, consumers fall back to central differences.
struct VelocityField {
    std::string kind = "custom";
    std::function<Vec4(const Vec4&)> u;
    std::function<Mat4(const Vec4&)> jacobian;
    std::function<bool(const Vec4&)> domain;  // empty means all of R^4
    double c = 1.0;
};

inline bool in_domain(const VelocityField& f, const Vec4& x) {
    return !f.domain || f.domain(x);
}

inline Vec4 eval_velocity(const VelocityField& f, const Vec4& x) {
    if (!f.u) throw std::invalid_argument("VelocityField: no evaluator attached");
    if (!in_domain(f, x))
        throw std::domain_error("VelocityField: event outside the field's domain");
    Vec4 u = f.u(x);
    const double c2 = f.c * f.c;
    if (std::abs(mdot(u, u) - c2) > 1e-10 * std::max(1.0, c2))
        throw std::logic_error("VelocityField: u.u differs from c^2 beyond tolerance");
    return u;
}

// Everywhere-constant normalized field of an inertial congruence.
inline VelocityField constant_field(const Vec3& beta, double c = 1.0) {
    if (!(beta.norm() < 1.0))
        throw std::domain_error("constant_field: |beta| must be < 1");
    const double gamma = 1.0 / std::sqrt(1.0 - beta.squaredNorm());
    const Vec4 u(c * gamma, c * gamma * beta[0], c * gamma * beta[1], c * gamma * beta[2]);
    VelocityField f;
    f.kind = "constant";
    f.c = c;
    f.u = [u](const Vec4&) { return u; };
    f.jacobian = [](const Vec4&) { return Mat4(Mat4::Zero()); };
    return f;
}

// Normalized boost Killing field c K / |K| with K = x d_ct + ct d_x, defined
// on the right wedge x > |ct|. Its orbits are the hyperbolae x^2-(ct)^2=x0^2.
inline VelocityField boost_killing_field(double c = 1.0) {
    if (!(c > 0.0)) throw std::invalid_argument("boost_killing_field: c must be positive");
    VelocityField f;
    f.kind = "boost_killing";
    f.c = c;
    f.domain = [](const Vec4& x) { return x[1] > std::abs(x[0]); };
    f.u = [c](const Vec4& x) {
        const double S = std::sqrt(x[1] * x[1] - x[0] * x[0]);
        return Vec4(c * x[1] / S, c * x[0] / S, 0.0, 0.0);
    };
    f.jacobian = [c](const Vec4& x) {
        const double S2 = x[1] * x[1] - x[0] * x[0];
        const double S3 = S2 * std::sqrt(S2);
        Mat4 J = Mat4::Zero();
        J(0, 0) = c * x[1] * x[0] / S3;
        J(0, 1) = -c * x[0] * x[0] / S3;
        J(1, 0) = c * x[1] * x[1] / S3;
        J(1, 1) = -c * x[0] * x[1] / S3;
        return J;
    };
    return f;
}

// Normalized rotation Killing field c K / |K| with K = d_t + kappa d_phi,
// defined where the orbit speed kappa * rho stays below c.
inline VelocityField rotation_killing_field(double kappa, double c = 1.0) {
    if (!(c > 0.0)) throw std::invalid_argument("rotation_killing_field: c must be positive");
    VelocityField f;
    f.kind = "rotation_killing";
    f.c = c;
    f.domain = [kappa, c](const Vec4& x) {
        return kappa * kappa * (x[1] * x[1] + x[2] * x[2]) < c * c;
    };
    auto K_of = [kappa, c](const Vec4& x) {
        return Vec4(c, -kappa * x[2], kappa * x[1], 0.0);
    };
    f.u = [kappa, c, K_of](const Vec4& x) {
        const double S = std::sqrt(c * c - kappa * kappa * (x[1] * x[1] + x[2] * x[2]));
        return Vec4((c / S) * K_of(x));
    };
    f.jacobian = [kappa, c, K_of](const Vec4& x) {
        const double S2 = c * c - kappa * kappa * (x[1] * x[1] + x[2] * x[2]);
        const double S = std::sqrt(S2), S3 = S2 * S;
        const Vec4 K = K_of(x);
        Mat4 J = Mat4::Zero();
        J.col(1) = c * (Vec4(0.0, 0.0, kappa, 0.0) / S + K * (kappa * kappa * x[1] / S3));
        J.col(2) = c * (Vec4(0.0, -kappa, 0.0, 0.0) / S + K * (kappa * kappa * x[2] / S3));
        return J;
    };
    return f;
}

// d u^mu / d x^nu by central differences, step scaled per coordinate.
inline Mat4 fd_jacobian(const VelocityField& f, const Vec4& x, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("fd_jacobian: step must be positive");
    Mat4 J;
    for (int nu = 0; nu < 4; ++nu) {
        const double h = step * std::max(1.0, std::abs(x[nu]));
        Vec4 dx = Vec4::Zero();
        dx[nu] = h;
        const Vec4 up = eval_velocity(f, x + dx);
        const Vec4 um = eval_velocity(f, x - dx);
        for (int mu = 0; mu < 4; ++mu) J(mu, nu) = (up[mu] - um[mu]) / (2.0 * h);
    }
    return J;
}

struct Kinematics {
    Vec4 x = Vec4::Zero();
    Vec4 u = Vec4::Zero();  // field value, contravariant
    Vec4 a = Vec4::Zero();  // acceleration grad_u u, contravariant
    Mat4 grad_u_flat = Mat4::Zero();  // (a,b) = d_a u_b
    Mat4 theta = Mat4::Zero();        // expansion + shear, covariant, horizontal
    Mat4 omega = Mat4::Zero();        // vorticity, covariant, horizontal
    double reconstruction_residual = 0.0;
};

// Split grad u-flat into theta + omega + u-flat (x) a-flat / c^2. With an
// analytic Jacobian the split is exact; with finite differences the small
// leakage along u is projected off and reported as the residual.
inline Kinematics decompose_kinematics(const VelocityField& f, const Vec4& x,
                                       double fd_step = 1e-5) {
    Kinematics k;
    k.x = x;
    k.u = eval_velocity(f, x);
    const double c2 = f.c * f.c;
    const bool analytic = static_cast<bool>(f.jacobian);
    const Mat4 J = analytic ? f.jacobian(x) : fd_jacobian(f, x, fd_step);
    Mat4 D;  // D(a,b) = d_a u_b
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) D(a, b) = (b == 0 ? 1.0 : -1.0) * J(b, a);
    k.a = J * k.u;
    const Vec4 ul = lower4(k.u), al = lower4(k.a);
    Mat4 theta = 0.5 * (D + D.transpose()) -
                 (0.5 / c2) * (ul * al.transpose() + al * ul.transpose());
    Mat4 omega = 0.5 * (D - D.transpose()) -
                 (0.5 / c2) * (ul * al.transpose() - al * ul.transpose());
    if (!analytic) {
        const Mat4 P = covariant_projector(k.u, f.c);
        theta = P * theta * P.transpose();
        omega = P * omega * P.transpose();
    }
    k.grad_u_flat = D;
    k.theta = theta;
    k.omega = omega;
    k.reconstruction_residual =
        (D - theta - omega - (ul * al.transpose()) / c2).cwiseAbs().maxCoeff();
    return k;
}

namespace detail {

// Lie derivative of a covariant 2-tensor field T along the (possibly
// unnormalized) field v, everything by central differences.
inline Mat4 lie_cov2_fd(const std::function<Vec4(const Vec4&)>& v,
                        const std::function<Mat4(const Vec4&)>& T, const Vec4& x,
                        double step) {
    const Vec4 v0 = v(x);
    const Mat4 T0 = T(x);
    Mat4 dT[4];   // dT[nu] = d_nu T
    Mat4 dV;      // dV(nu, mu) = d_nu v^mu
    for (int nu = 0; nu < 4; ++nu) {
        const double h = step * std::max(1.0, std::abs(x[nu]));
        Vec4 dx = Vec4::Zero();
        dx[nu] = h;
        const Vec4 vp = v(x + dx), vm = v(x - dx);
        dT[nu] = (T(x + dx) - T(x - dx)) / (2.0 * h);
        for (int mu = 0; mu < 4; ++mu) dV(nu, mu) = (vp[mu] - vm[mu]) / (2.0 * h);
    }
    Mat4 lie;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            double s = 0.0;
            for (int m = 0; m < 4; ++m)
                s += v0[m] * dT[m](a, b) + T0(m, b) * dV(a, m) + T0(a, m) * dV(b, m);
            lie(a, b) = s;
        }
    }
    return lie;
}

}  // namespace detail

// ||L_u h||_inf by direct finite differences of h and u. Zero exactly for
// rigid flows; equals 2 ||theta||_inf in general, which the function checks
// to second order in the step before returning the direct value.
inline double born_residual(const VelocityField& f, const Vec4& x, double fd_step = 1e-5) {
    auto u_of = [&f](const Vec4& y) { return eval_velocity(f, y); };
    auto h_of = [&f](const Vec4& y) { return horizontal_metric(eval_velocity(f, y), f.c); };
    const double direct = detail::lie_cov2_fd(u_of, h_of, x, fd_step).cwiseAbs().maxCoeff();
    const Kinematics k = decompose_kinematics(f, x, fd_step);
    const double via_theta = 2.0 * k.theta.cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, k.grad_u_flat.cwiseAbs().maxCoeff());
    const double agree_tol =
        1e4 * fd_step * fd_step * scale * scale * scale + 1e-9;
    if (std::abs(direct - via_theta) > agree_tol)
        throw std::runtime_error(
            "born_residual: direct Lie derivative and 2 ||theta|| disagree beyond O(step^2)");
    return direct;
}

// ||L_{s u} h||_inf where h stays the horizontal metric of the normalized
// field: rescaling the generator must not change the rigidity verdict.
inline double scaled_born_residual(const VelocityField& f,
                                   const std::function<double(const Vec4&)>& s,
                                   const Vec4& x, double fd_step = 1e-5) {
    if (!s) throw std::invalid_argument("scaled_born_residual: scale function required");
    auto v_of = [&f, &s](const Vec4& y) { return Vec4(s(y) * eval_velocity(f, y)); };
    auto h_of = [&f](const Vec4& y) { return horizontal_metric(eval_velocity(f, y), f.c); };
    return detail::lie_cov2_fd(v_of, h_of, x, fd_step).cwiseAbs().maxCoeff();
}

// ||L_u omega||_inf: the vorticity of a rigid flow is transported, so this
// vanishes for the Killing examples.
inline double vorticity_transport_residual(const VelocityField& f, const Vec4& x,
                                           double fd_step = 1e-5) {
    auto u_of = [&f](const Vec4& y) { return eval_velocity(f, y); };
    auto w_of = [&f, fd_step](const Vec4& y) {
        return decompose_kinematics(f, y, fd_step).omega;
    };
    return detail::lie_cov2_fd(u_of, w_of, x, fd_step).cwiseAbs().maxCoeff();
}

// ||d a-flat||_inf by central differences of the acceleration one-form field;
// zero exactly when the rigid flow is generated by a Killing field.
inline double accel_curl_residual(const VelocityField& f, const Vec4& x,
                                  double fd_step = 1e-5) {
    auto a_of = [&f, fd_step](const Vec4& y) {
        return lower4(decompose_kinematics(f, y, fd_step).a);
    };
    Mat4 dA;  // dA(nu, mu) = d_nu a_mu
    for (int nu = 0; nu < 4; ++nu) {
        const double h = fd_step * std::max(1.0, std::abs(x[nu]));
        Vec4 dx = Vec4::Zero();
        dx[nu] = h;
        const Vec4 ap = a_of(x + dx), am = a_of(x - dx);
        for (int mu = 0; mu < 4; ++mu) dA(nu, mu) = (ap[mu] - am[mu]) / (2.0 * h);
    }
    return (dA - dA.transpose()).cwiseAbs().maxCoeff();
}

// Orbit of the boost Killing flow through (0, x0), parameterized by eigentime.
inline Vec4 boost_flow(double x0, double tau, double c = 1.0) {
    if (!(x0 > 0.0)) throw std::domain_error("boost_flow: x0 must be positive");
    const double s = c * tau / x0;
    return Vec4(x0 * std::sinh(s), x0 * std::cosh(s), 0.0, 0.0);
}

// Label of the hyperplane through (ct, x) in the right wedge; constant-label
// hyperplanes cut every boost orbit orthogonally.
inline double killing_time(double ct, double x) {
    if (!(std::abs(ct) < x))
        throw std::domain_error("killing_time: need |ct| < x (right wedge)");
    return std::atanh(ct / x);
}

// Eigentime a hyperbolic orbit of parameter x0 needs to reach speed v.
inline double eigentime_to_speed(double v, double x0, double c = 1.0) {
    if (!(x0 > 0.0)) throw std::domain_error("eigentime_to_speed: x0 must be positive");
    if (!(std::abs(v) < c)) throw std::domain_error("eigentime_to_speed: need |v| < c");
    return (x0 / c) * std::atanh(v / c);
}

// Velocity field u = zdot(sigma(x)) taken from a timelike worldline: sigma
// labels the unique worldline parameter whose orthogonal hyperplane passes
// through x. The flow is rigid and irrotational on the tube where the
// hyperplanes do not intersect (lapse N > 0).
//
// The sigma solver keeps a warm-start cache shared with any VelocityField
// views produced by field(); evaluations are therefore not thread-safe across
// a shared instance. Use independent copies for concurrent query streams.
class IrrotationalField {
  public:
    IrrotationalField(WorldLine line, double tau_lo, double tau_hi, int coarse_samples = 128)
        : line_(std::move(line)), lo_(tau_lo), hi_(tau_hi), coarse_(coarse_samples),
          state_(std::make_shared<Warm>()) {
        if (!(hi_ > lo_))
            throw std::invalid_argument("IrrotationalField: empty parameter range");
        if (!line_.position || !line_.velocity || !line_.acceleration)
            throw std::invalid_argument("IrrotationalField: worldline must provide z, dz, d2z");
        if (coarse_ < 2)
            throw std::invalid_argument("IrrotationalField: need at least 2 coarse samples");
    }

    double c() const { return line_.c; }
    const WorldLine& line() const { return line_; }

    // Newton on f(t) = zdot(t).(x - z(t)) with f'(t) = zddot(t).(x - z(t)) - c^2.
    // Warm start from the previous query, else a coarse scan of [lo, hi].
    // Iterates may overstep the range by a small slack; worldline callables
    // must tolerate that margin.
    double sigma(const Vec4& x) const {
        const double tol = 1e-12 * line_.c * line_.c;
        std::optional<double> root;
        if (state_->valid) root = newton(x, state_->tau, tol);
        if (!root) root = newton(x, coarse_seed(x), tol);
        if (!root)
            throw std::domain_error(
                "IrrotationalField: Newton failed; event outside the rigid tube");
        const double N = lapse_at(x, *root);
        if (!(N > 0.0))
            throw std::domain_error(
                "IrrotationalField: lapse not positive; event outside the rigid tube");
        state_->tau = *root;
        state_->valid = true;
        return *root;
    }

    double lapse(const Vec4& x) const { return lapse_at(x, sigma(x)); }

    // Normalized tangent c zdot(sigma) / |zdot(sigma)|. For an eigentime
    // parameterized worldline the scaling is the identity; for sampled
    // (spline) worldlines it absorbs the interpolation error so the field
    // meets the u.u = c^2 contract exactly.
    Vec4 u(const Vec4& x) const { return normalized_tangent(sigma(x)); }

    // d u^mu / d x^nu = udot^mu zdot_nu / (N c^2), all at sigma(x), where
    // udot is the parameter derivative of the normalized tangent. For an
    // eigentime curve this is zddot^mu zdot_nu / (N c^2).
    Mat4 jacobian(const Vec4& x) const {
        const double s = sigma(x);
        const double N = lapse_at(x, s);
        const double c2 = line_.c * line_.c;
        return Mat4((tangent_rate(s) * lower4(line_.velocity(s)).transpose()) / (N * c2));
    }

    // a-flat = zddot-flat(sigma) / N for an eigentime curve; in general the
    // lowered parameter rate of u scaled by |zdot| / (N c).
    Vec4 accel_oneform(const Vec4& x) const {
        const double s = sigma(x);
        const double vnorm = std::sqrt(mdot(line_.velocity(s), line_.velocity(s)));
        return Vec4(lower4(tangent_rate(s)) * (vnorm / (lapse_at(x, s) * line_.c)));
    }

    // L_u a-flat = i_u d a-flat in closed form; requires the worldline jerk.
    // On the worldline itself only the first term survives and the expression
    // reduces to the horizontal jerk over N^2.
    Vec4 lie_accel_oneform(const Vec4& x) const {
        if (!line_.jerk)
            throw std::logic_error("IrrotationalField: worldline has no jerk callable");
        const double s = sigma(x);
        const double N = lapse_at(x, s);
        const double c2 = line_.c * line_.c;
        const Vec4 zd = line_.velocity(s);
        const Vec4 zdd = line_.acceleration(s);
        const Vec4 zj = line_.jerk(s);
        const Vec4 pj = zj - (mdot(zd, zj) / c2) * zd;  // horizontal jerk
        const double q = mdot(pj, x - line_.position(s));
        return Vec4(lower4(pj) / (N * N) + lower4(zdd) * (q / (N * N * N * c2)));
    }

    VelocityField field() const {
        VelocityField f;
        f.kind = "worldline_irrotational";
        f.c = line_.c;
        const IrrotationalField self = *this;  // shares the warm-start cache
        f.u = [self](const Vec4& x) { return self.u(x); };
        f.jacobian = [self](const Vec4& x) { return self.jacobian(x); };
        return f;
    }

  private:
    struct Warm {
        double tau = 0.0;
        bool valid = false;
    };

    double slack() const { return 0.1 * (hi_ - lo_); }

    // N = [zdot.zdot - zddot.(x - z)] / c^2; equals 1 - zddot.(x - z)/c^2 for
    // an eigentime curve. Positive exactly on the tube of non-intersecting
    // hyperplanes, and -N c^2 is the Newton derivative.
    double lapse_at(const Vec4& x, double s) const {
        const Vec4 zd = line_.velocity(s);
        return (mdot(zd, zd) - mdot(line_.acceleration(s), x - line_.position(s))) /
               (line_.c * line_.c);
    }

    Vec4 normalized_tangent(double s) const {
        const Vec4 zd = line_.velocity(s);
        return Vec4(zd * (line_.c / std::sqrt(mdot(zd, zd))));
    }

    // Parameter derivative of the normalized tangent.
    Vec4 tangent_rate(double s) const {
        const Vec4 zd = line_.velocity(s);
        const Vec4 zdd = line_.acceleration(s);
        const double v2 = mdot(zd, zd);
        return Vec4(line_.c * (zdd / std::sqrt(v2) - zd * (mdot(zd, zdd) / (v2 * std::sqrt(v2)))));
    }

    double coarse_seed(const Vec4& x) const {
        double best = lo_, best_f = std::numeric_limits<double>::infinity();
        for (int k = 0; k < coarse_; ++k) {
            const double t = lo_ + (hi_ - lo_) * k / (coarse_ - 1.0);
            const double fv = std::abs(mdot(line_.velocity(t), x - line_.position(t)));
            if (fv < best_f) {
                best_f = fv;
                best = t;
            }
        }
        return best;
    }

    std::optional<double> newton(const Vec4& x, double t, double tol) const {
        for (int it = 0; it < 50; ++it) {
            const Vec4 dz = x - line_.position(t);
            const double fv = mdot(line_.velocity(t), dz);
            if (std::abs(fv) <= tol) return t;
            const double fp = mdot(line_.acceleration(t), dz) - line_.c * line_.c;
            if (fp == 0.0) return std::nullopt;
            t -= fv / fp;
            if (t < lo_ - slack() || t > hi_ + slack()) return std::nullopt;
        }
        return std::nullopt;
    }

    WorldLine line_;
    double lo_, hi_;
    int coarse_;
    std::shared_ptr<Warm> state_;
};

inline IrrotationalField irrotational_from_worldline(WorldLine line, double tau_lo,
                                                     double tau_hi, int coarse_samples = 128) {
    return IrrotationalField(std::move(line), tau_lo, tau_hi, coarse_samples);
}

// Natural cubic spline through 4-vector samples: C^2, so worldlines rebuilt
// from samples keep a continuous acceleration for the sigma Newton solve.
class NaturalSpline4 {
  public:
    NaturalSpline4(std::vector<double> t, std::vector<Vec4> y)
        : t_(std::move(t)), y_(std::move(y)) {
        const std::size_t n = t_.size();
        if (n != y_.size() || n < 3)
            throw std::invalid_argument("NaturalSpline4: need matching samples, length >= 3");
        for (std::size_t k = 1; k < n; ++k)
            if (!(t_[k] > t_[k - 1]))
                throw std::invalid_argument("NaturalSpline4: knots must strictly increase");
        m_.assign(n, Vec4::Zero());
        // Tridiagonal solve for interior second derivatives, natural ends.
        std::vector<double> diag(n, 0.0), sub(n, 0.0);
        std::vector<Vec4> rhs(n, Vec4::Zero());
        for (std::size_t k = 1; k + 1 < n; ++k) {
            const double hp = t_[k] - t_[k - 1], hn = t_[k + 1] - t_[k];
            sub[k] = hp;
            diag[k] = 2.0 * (hp + hn);
            rhs[k] = 6.0 * ((y_[k + 1] - y_[k]) / hn - (y_[k] - y_[k - 1]) / hp);
        }
        for (std::size_t k = 2; k + 1 < n; ++k) {
            const double w = sub[k] / diag[k - 1];
            diag[k] -= w * (t_[k] - t_[k - 1]);
            rhs[k] -= w * rhs[k - 1];
        }
        for (std::size_t k = n - 2; k >= 1; --k) {
            Vec4 num = rhs[k];
            if (k + 2 < n) num -= (t_[k + 1] - t_[k]) * m_[k + 1];
            m_[k] = num / diag[k];
        }
    }

    double t_min() const { return t_.front(); }
    double t_max() const { return t_.back(); }

    Vec4 value(double t) const {
        const std::size_t k = segment(t);
        const double h = t_[k + 1] - t_[k], s = t - t_[k];
        const Vec4 b = (y_[k + 1] - y_[k]) / h - h * (2.0 * m_[k] + m_[k + 1]) / 6.0;
        return y_[k] + s * b + (s * s / 2.0) * m_[k] +
               (s * s * s / (6.0 * h)) * (m_[k + 1] - m_[k]);
    }

    Vec4 deriv(double t) const {
        const std::size_t k = segment(t);
        const double h = t_[k + 1] - t_[k], s = t - t_[k];
        const Vec4 b = (y_[k + 1] - y_[k]) / h - h * (2.0 * m_[k] + m_[k + 1]) / 6.0;
        return b + s * m_[k] + (s * s / (2.0 * h)) * (m_[k + 1] - m_[k]);
    }

    Vec4 second(double t) const {
        const std::size_t k = segment(t);
        const double h = t_[k + 1] - t_[k], s = t - t_[k];
        return m_[k] + (s / h) * (m_[k + 1] - m_[k]);
    }

  private:
    std::size_t segment(double t) const {
        if (t < t_.front() || t > t_.back())
            throw std::domain_error("NaturalSpline4: evaluation outside sample range");
        std::size_t lo = 0, hi = t_.size() - 1;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            (t_[mid] <= t ? lo : hi) = mid;
        }
        return lo;
    }

    std::vector<double> t_;
    std::vector<Vec4> y_;
    std::vector<Vec4> m_;
};

// Worldline from eigentime-tagged event samples. The spline only reproduces
// zdot.zdot = c^2 up to interpolation error; callers should sample densely
// enough for the normalization check of downstream consumers.
inline WorldLine worldline_from_samples(std::vector<double> tau, std::vector<Vec4> events,
                                        double c = 1.0) {
    auto sp = std::make_shared<NaturalSpline4>(std::move(tau), std::move(events));
    WorldLine w;
    w.c = c;
    w.position = [sp](double t) { return sp->value(t); };
    w.velocity = [sp](double t) { return sp->deriv(t); };
    w.acceleration = [sp](double t) { return sp->second(t); };
    return w;
}

// Named worldline forms: "hyperbolic:x0", "circular:R,omega", "line:bx,by,bz".
inline WorldLine worldline_from_name(const std::string& name, double c = 1.0) {
    const auto colon = name.find(':');
    const std::string head = name.substr(0, colon);
    std::vector<double> args;
    if (colon != std::string::npos) {
        std::string rest = name.substr(colon + 1);
        std::size_t pos = 0;
        while (pos <= rest.size()) {
            const auto comma = rest.find(',', pos);
            const std::string tok =
                rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            try {
                args.push_back(std::stod(tok));
            } catch (const std::exception&) {
                throw std::invalid_argument("worldline_from_name: bad number in '" + name + "'");
            }
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    if (head == "hyperbolic" && args.size() == 1) return hyperbolic_worldline(args[0], c);
    if (head == "circular" && args.size() == 2) {
        const double R = args[0], om = args[1];
        if (!(R > 0.0) || om == 0.0)
            throw std::invalid_argument("worldline_from_name: circular needs R > 0, omega != 0");
        const double beta = std::abs(R * om) / c;
        if (!(beta < 1.0))
            throw std::domain_error("worldline_from_name: circular orbit speed must stay below c");
        return circular_worldline(beta, om, c);
    }
    if (head == "line" && args.size() == 3)
        return inertial_worldline(Vec4::Zero(), Vec3(args[0], args[1], args[2]), c);
    throw std::invalid_argument("worldline_from_name: unrecognized form '" + name + "'");
}

}  // namespace relkit
