#pragma once

// Geometry of the uniformly rotating frame in the co-rotating chart
// (t, z, rho, psi), psi = phi - kappa t. The Killing generator is d_t; the
// spacetime metric splits as g = c^2 exp(2 Phi/c^2) A (x) A - h with the
// potential Phi, the synchronization connection A = K-flat / K^2, and the
// quotient 3-metric h = dz^2 + drho^2 + rho^2 dpsi^2 / (1 - (kappa rho/c)^2).
// Holonomies of A are the simultaneity lapses around closed spatial loops;
// h carries the circumference/area excess and negative Gaussian curvature,
// tied to the bundle curvature F = dA by the Kaluza-Klein identity.

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "lorentz.hpp"

namespace relkit {

using Vec2 = Eigen::Vector2d;

// Gaussian curvature of a 2-metric (E, F, G)(u, v) by the Brioschi formula
// with central-difference derivatives.
inline double brioschi_curvature_fd(
    const std::function<Eigen::Vector3d(double, double)>& efg, double u, double v,
    double hu, double hv) {
    if (!(hu > 0.0) || !(hv > 0.0))
        throw std::invalid_argument("brioschi_curvature_fd: steps must be positive");
    auto at = [&efg](double a, double b) { return efg(a, b); };
    const Eigen::Vector3d C = at(u, v);
    const Eigen::Vector3d Up = at(u + hu, v), Um = at(u - hu, v);
    const Eigen::Vector3d Vp = at(u, v + hv), Vm = at(u, v - hv);
    const Eigen::Vector3d Dpp = at(u + hu, v + hv), Dpm = at(u + hu, v - hv);
    const Eigen::Vector3d Dmp = at(u - hu, v + hv), Dmm = at(u - hu, v - hv);

    const double E = C[0], F = C[1], G = C[2];
    const double Eu = (Up[0] - Um[0]) / (2 * hu), Ev = (Vp[0] - Vm[0]) / (2 * hv);
    const double Fu = (Up[1] - Um[1]) / (2 * hu), Fv = (Vp[1] - Vm[1]) / (2 * hv);
    const double Gu = (Up[2] - Um[2]) / (2 * hu), Gv = (Vp[2] - Vm[2]) / (2 * hv);
    const double Evv = (Vp[0] - 2 * C[0] + Vm[0]) / (hv * hv);
    const double Guu = (Up[2] - 2 * C[2] + Um[2]) / (hu * hu);
    const double Fuv = (Dpp[1] - Dpm[1] - Dmp[1] + Dmm[1]) / (4 * hu * hv);

    Eigen::Matrix3d M1, M2;
    M1 << -0.5 * Evv + Fuv - 0.5 * Guu, 0.5 * Eu, Fu - 0.5 * Ev,
          Fv - 0.5 * Gu, E, F,
          0.5 * Gv, F, G;
    M2 << 0.0, 0.5 * Ev, 0.5 * Gu,
          0.5 * Ev, E, F,
          0.5 * Gu, F, G;
    const double den = E * G - F * F;
    if (!(den > 0.0))
        throw std::domain_error("brioschi_curvature_fd: metric not positive definite");
    return (M1.determinant() - M2.determinant()) / (den * den);
}

// Scalar curvature of a 3-metric field by nested central differences:
// Christoffel symbols from first metric derivatives, Ricci from their
// derivatives, then the trace.
inline double scalar_curvature_3metric_fd(
    const std::function<Eigen::Matrix3d(const Eigen::Vector3d&)>& metric,
    const Eigen::Vector3d& y, const Eigen::Vector3d& step) {
    using M3 = Eigen::Matrix3d;
    using V3 = Eigen::Vector3d;
    auto gamma = [&](const V3& p) {
        std::array<M3, 3> dH;
        for (int l = 0; l < 3; ++l) {
            V3 dp = V3::Zero();
            dp[l] = step[l];
            dH[l] = (metric(p + dp) - metric(p - dp)) / (2.0 * step[l]);
        }
        const M3 Hinv = metric(p).inverse();
        std::array<M3, 3> G;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) {
                    double s = 0.0;
                    for (int l = 0; l < 3; ++l)
                        s += Hinv(i, l) * (dH[j](l, k) + dH[k](j, l) - dH[l](j, k));
                    G[i](j, k) = 0.5 * s;
                }
        return G;
    };
    std::array<std::array<M3, 3>, 3> dG;  // dG[m] = d_m Gamma
    for (int m = 0; m < 3; ++m) {
        V3 dp = V3::Zero();
        dp[m] = step[m];
        const auto Gp = gamma(y + dp), Gm = gamma(y - dp);
        for (int i = 0; i < 3; ++i) dG[m][i] = (Gp[i] - Gm[i]) / (2.0 * step[m]);
    }
    const auto G0 = gamma(y);
    M3 ricci;
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
            double r = 0.0;
            for (int i = 0; i < 3; ++i) {
                r += dG[i][i](j, k) - dG[j][i](i, k);
                for (int p = 0; p < 3; ++p)
                    r += G0[i](i, p) * G0[p](j, k) - G0[i](j, p) * G0[p](i, k);
            }
            ricci(j, k) = r;
        }
    return (metric(y).inverse() * ricci).trace();
}

// Laplace-Beltrami of a scalar by nested central differences through the
// divergence form (1/sqrt h) d_i (sqrt h h^ij d_j f).
inline double laplacian_3metric_fd(
    const std::function<Eigen::Matrix3d(const Eigen::Vector3d&)>& metric,
    const std::function<double(const Eigen::Vector3d&)>& f, const Eigen::Vector3d& y,
    const Eigen::Vector3d& step) {
    using V3 = Eigen::Vector3d;
    auto flux = [&](const V3& p) {
        V3 grad;
        for (int j = 0; j < 3; ++j) {
            V3 dp = V3::Zero();
            dp[j] = step[j];
            grad[j] = (f(p + dp) - f(p - dp)) / (2.0 * step[j]);
        }
        const Eigen::Matrix3d H = metric(p);
        return V3(std::sqrt(H.determinant()) * (H.inverse() * grad));
    };
    double div = 0.0;
    for (int i = 0; i < 3; ++i) {
        V3 dp = V3::Zero();
        dp[i] = step[i];
        div += (flux(y + dp)[i] - flux(y - dp)[i]) / (2.0 * step[i]);
    }
    return div / std::sqrt(metric(y).determinant());
}

// Closed spatial loop sampled in the quotient coordinates (z, rho, psi);
// first and last samples must coincide.
struct LoopPath {
    std::vector<Eigen::Vector3d> points;
};

struct LoopLapse {
    double coordinate = 0.0;  // Delta t
    double proper = 0.0;      // Delta tau at the loop's base point
};

struct RotatingFrame {
    double kappa = 1.0;
    double c = 1.0;

    RotatingFrame(double angular_velocity, double light_speed = 1.0)
        : kappa(angular_velocity), c(light_speed) {
        if (!(kappa > 0.0))
            throw std::invalid_argument("RotatingFrame: kappa must be positive");
        if (!(c > 0.0)) throw std::invalid_argument("RotatingFrame: c must be positive");
    }

    double critical_radius() const { return c / kappa; }

    void require_inside(double rho) const {
        if (!(rho >= 0.0) || !(kappa * rho < c))
            throw std::domain_error("RotatingFrame: need 0 <= rho and kappa rho < c");
    }

    // D = 1 - (kappa rho / c)^2 = exp(2 Phi / c^2).
    double denom(double rho) const {
        require_inside(rho);
        const double q = kappa * rho / c;
        return 1.0 - q * q;
    }

    double potential(double rho) const { return 0.5 * c * c * std::log(denom(rho)); }

    // A = dt - [kappa rho^2 / (c^2 - kappa^2 rho^2)] dpsi, components in
    // (t, z, rho, psi).
    Vec4 connection(const Vec4& p) const {
        const double rho = p[2];
        const double d = denom(rho);
        return Vec4(1.0, 0.0, 0.0, -kappa * rho * rho / (c * c * d));
    }

    // F = dA in closed form: the only surviving block is F_{rho psi}.
    Mat4 curvature(const Vec4& p) const {
        const double rho = p[2];
        const double d = denom(rho);
        Mat4 F = Mat4::Zero();
        F(2, 3) = -2.0 * kappa * rho / (c * c * d * d);
        F(3, 2) = -F(2, 3);
        return F;
    }

    // Exterior derivative of the connection by central differences; agrees
    // with curvature() to O(step^2).
    Mat4 curvature_fd(const Vec4& p, double step = 1e-3) const {
        const double h = step * critical_radius();
        Mat4 dA;  // dA(mu, nu) = d_mu A_nu
        for (int mu = 0; mu < 4; ++mu) {
            Vec4 dp = Vec4::Zero();
            dp[mu] = h;
            const Vec4 Ap = connection(p + dp), Am = connection(p - dp);
            for (int nu = 0; nu < 4; ++nu) dA(mu, nu) = (Ap[nu] - Am[nu]) / (2.0 * h);
        }
        return Mat4(dA - dA.transpose());
    }

    // a-flat = -dPhi, components in (t, z, rho, psi).
    Vec4 accel_oneform(double rho) const {
        const double d = denom(rho);
        return Vec4(0.0, 0.0, kappa * kappa * rho / d, 0.0);
    }

    // Spacetime metric components in the co-rotating chart, by direct
    // substitution phi = psi + kappa t into the cylindrical Minkowski form.
    Mat4 spacetime_metric(const Vec4& p) const {
        const double rho = p[2];
        require_inside(rho);
        Mat4 g = Mat4::Zero();
        g(0, 0) = c * c - kappa * kappa * rho * rho;
        g(0, 3) = g(3, 0) = -kappa * rho * rho;
        g(1, 1) = -1.0;
        g(2, 2) = -1.0;
        g(3, 3) = -rho * rho;
        return g;
    }

    // c^2 exp(2 Phi/c^2) A (x) A - h, with h the quotient metric extended by
    // zeros along dt; reproduces spacetime_metric().
    Mat4 kaluza_klein_form(const Vec4& p) const {
        const double rho = p[2];
        const double d = denom(rho);
        const Vec4 A = connection(p);
        Mat4 h4 = Mat4::Zero();
        h4(1, 1) = 1.0;
        h4(2, 2) = 1.0;
        h4(3, 3) = rho * rho / d;
        return Mat4(c * c * d * (A * A.transpose()) - h4);
    }

    // Quotient 3-metric in (z, rho, psi).
    Eigen::Matrix3d quotient_metric(double rho) const {
        const double d = denom(rho);
        Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
        h(0, 0) = 1.0;
        h(1, 1) = 1.0;
        h(2, 2) = rho * rho / d;
        return h;
    }

    // Circumference and area of the planar constant-rho loop in h.
    double circumference(double rho) const { return 2.0 * M_PI * rho / std::sqrt(denom(rho)); }

    double area(double rho) const {
        const double d = denom(rho);
        return 2.0 * M_PI * c * c / (kappa * kappa) * (1.0 - std::sqrt(d));
    }

    // Composite trapezoid with one Richardson step (the half-resolution rule
    // folded in), killing the O(h^2) term so the closed forms are matched at
    // tight tolerance.
    double circumference_quad(double rho, int panels = 10000) const {
        require_inside(rho);
        auto integrand = [this, rho](double) { return rho / std::sqrt(denom(rho)); };
        return richardson_trapezoid(integrand, 0.0, 2.0 * M_PI, panels);
    }

    double area_quad(double rho, int panels = 10000) const {
        require_inside(rho);
        auto radial = [this](double r) { return r / std::sqrt(denom(r)); };
        return 2.0 * M_PI * richardson_trapezoid(radial, 0.0, rho, panels);
    }

    double gaussian_curvature(double rho) const {
        const double d = denom(rho);
        const double a = kappa / c;
        return -3.0 * a * a / (d * d);
    }

    // Brioschi finite-difference curvature of the (rho, psi) 2-metric.
    double gaussian_curvature_fd(double rho, double step = 1e-3) const {
        const double h = step * critical_radius();
        guard_steps(rho, 2.0 * h);
        auto efg = [this](double r, double) {
            return Eigen::Vector3d(1.0, 0.0, r * r / denom(r));
        };
        return brioschi_curvature_fd(efg, rho, 0.0, h, h);
    }

    // The constant-psi sections (z, rho) of h are flat.
    double flat_section_curvature_fd(double rho, double step = 1e-3) const {
        const double h = step * critical_radius();
        guard_steps(rho, 2.0 * h);
        auto efg = [](double, double) { return Eigen::Vector3d(1.0, 0.0, 1.0); };
        return brioschi_curvature_fd(efg, 0.0, rho, h, h);
    }

    double scalar_curvature_fd(double rho, double step = 1e-3) const {
        const double h = step * critical_radius();
        guard_steps(rho, 4.0 * h);
        auto metric = [this](const Eigen::Vector3d& y) { return quotient_metric(y[1]); };
        return scalar_curvature_3metric_fd(metric, Eigen::Vector3d(0.0, rho, 0.0),
                                           Eigen::Vector3d(h, h, h));
    }

    // |R_h - 2 e^{-Phi/c^2} Delta_h e^{Phi/c^2} + (c^2/4) e^{2Phi/c^2} ||F||_h^2|
    // with R_h and the Laplacian taken by finite differences, sharpened by one
    // Richardson halving step. Vanishes because the ambient metric is flat.
    double kaluza_klein_residual(double rho, double fd_step = 1e-3) const {
        const double h = fd_step * critical_radius();
        guard_steps(rho, 4.0 * h);
        auto metric = [this](const Eigen::Vector3d& y) { return quotient_metric(y[1]); };
        auto conf = [this](const Eigen::Vector3d& y) { return std::sqrt(denom(y[1])); };
        const Eigen::Vector3d y0(0.0, rho, 0.0);
        auto rich = [](double coarse, double fine) { return (4.0 * fine - coarse) / 3.0; };
        const Eigen::Vector3d s1(h, h, h), s2 = 0.5 * s1;
        const double R = rich(scalar_curvature_3metric_fd(metric, y0, s1),
                              scalar_curvature_3metric_fd(metric, y0, s2));
        const double lap = rich(laplacian_3metric_fd(metric, conf, y0, s1),
                                laplacian_3metric_fd(metric, conf, y0, s2));
        const double d = denom(rho);
        const Eigen::Matrix3d Hinv = quotient_metric(rho).inverse();
        Eigen::Matrix3d F3 = Eigen::Matrix3d::Zero();
        F3(1, 2) = -2.0 * kappa * rho / (c * c * d * d);
        F3(2, 1) = -F3(1, 2);
        double F2 = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k)
                    for (int l = 0; l < 3; ++l)
                        F2 += Hinv(i, k) * Hinv(j, l) * F3(i, j) * F3(k, l);
        return std::abs(R - 2.0 / std::sqrt(d) * lap + 0.25 * c * c * d * F2);
    }

    // Closed-form lapses around the planar constant-rho loop.
    double loop_lapse_circle(double rho) const {
        const double d = denom(rho);
        const double q = kappa * rho / c;
        return 2.0 * M_PI / kappa * q * q / d;
    }

    double proper_lapse_circle(double rho) const {
        return loop_lapse_circle(rho) * std::exp(potential(rho) / (c * c));
    }

    // Observed Sagnac phase shift: twice the light frequency times the
    // proper-time lapse of the loop at radius rho.
    double sagnac_phase(double nu, double rho) const {
        return 2.0 * nu * proper_lapse_circle(rho);
    }

  private:
    void guard_steps(double rho, double reach) const {
        require_inside(rho);
        if (!(rho - reach > 0.0) || !(kappa * (rho + reach) < c))
            throw std::domain_error(
                "RotatingFrame: finite-difference stencil leaves the domain; "
                "reduce the step or move away from the axis / critical radius");
    }

    static double richardson_trapezoid(const std::function<double(double)>& f, double a,
                                       double b, int panels) {
        if (panels < 2 || panels % 2 != 0)
            throw std::invalid_argument("RotatingFrame: panel count must be even and >= 2");
        auto trap = [&](int n) {
            const double h = (b - a) / n;
            double s = 0.5 * (f(a) + f(b));
            for (int k = 1; k < n; ++k) s += f(a + k * h);
            return s * h;
        };
        const double fine = trap(panels), coarse = trap(panels / 2);
        return (4.0 * fine - coarse) / 3.0;
    }
};

// Coordinate-time holonomy of the synchronization connection around the
// sampled loop: trapezoid rule for (kappa/c^2) Int rho^2 / D dpsi. The
// proper-time lapse converts by the clock rate at the loop's base point.
inline LoopLapse loop_lapse(const RotatingFrame& fr, const LoopPath& path) {
    const auto& pts = path.points;
    if (pts.size() < 2)
        throw std::invalid_argument("loop_lapse: need at least two samples");
    // closure: z and rho return exactly, psi up to whole turns
    const double dpsi = pts.back()[2] - pts.front()[2];
    const double turns = dpsi - 2.0 * M_PI * std::round(dpsi / (2.0 * M_PI));
    if (std::abs(pts.front()[0] - pts.back()[0]) > 1e-12 ||
        std::abs(pts.front()[1] - pts.back()[1]) > 1e-12 || std::abs(turns) > 1e-9)
        throw std::invalid_argument("loop_lapse: path is not closed");
    double dt = 0.0;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const double r0 = pts[k][1], r1 = pts[k + 1][1];
        const double f0 = r0 * r0 / fr.denom(r0), f1 = r1 * r1 / fr.denom(r1);
        dt += 0.5 * (f0 + f1) * (pts[k + 1][2] - pts[k][2]);
    }
    dt *= fr.kappa / (fr.c * fr.c);
    LoopLapse out;
    out.coordinate = dt;
    out.proper = dt * std::exp(fr.potential(pts.front()[1]) / (fr.c * fr.c));
    return out;
}

inline LoopPath circle_loop(double rho, int samples, double z = 0.0) {
    if (samples < 3) throw std::invalid_argument("circle_loop: need at least 3 samples");
    LoopPath p;
    p.points.reserve(samples + 1);
    for (int k = 0; k <= samples; ++k)
        p.points.emplace_back(z, rho, 2.0 * M_PI * k / samples);
    return p;
}

}  // namespace relkit
