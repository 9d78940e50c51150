#include <catch2/catch_amalgamated.hpp>

#include <relkit/rigid.hpp>
#include <relkit/worldline.hpp>

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "helpers.hpp"

using namespace relkit;

namespace {

// Non-rigid witness: normalized field along (c, lambda x, 0, 0). Carries no
// analytic Jacobian so consumers exercise the finite-difference path.
VelocityField shear_field(double lam, double c) {
    VelocityField f;
    f.kind = "shear";
    f.c = c;
    f.domain = [lam, c](const Vec4& x) { return std::abs(lam * x[1]) < c; };
    f.u = [lam, c](const Vec4& x) {
        const double S = std::sqrt(c * c - lam * lam * x[1] * x[1]);
        return Vec4(c * c / S, c * lam * x[1] / S, 0.0, 0.0);
    };
    return f;
}

VelocityField without_jacobian(VelocityField f) {
    f.jacobian = nullptr;
    return f;
}

// Spacelike unit vector orthogonal (Minkowski) to zd and to the given prior
// directions.
Vec4 leaf_direction(const Vec4& zd, const Vec4& seed, const std::vector<Vec4>& prior,
                    double c) {
    Vec4 e = seed;
    e -= (mdot(e, zd) / mdot(zd, zd)) * zd;
    for (const Vec4& p : prior) e -= (mdot(e, p) / mdot(p, p)) * p;
    const double n2 = -mdot(e, e);
    REQUIRE(n2 > 1e-12);
    e /= std::sqrt(n2);
    REQUIRE(std::abs(mdot(e, zd)) < 1e-12 * c);
    return e;
}

// Lie derivative of a covariant one-form field along u, all by central
// differences: (L_u A)_b = u^m d_m A_b + A_m d_b u^m.
Vec4 lie_oneform_fd(const std::function<Vec4(const Vec4&)>& u_of,
                    const std::function<Vec4(const Vec4&)>& a_of, const Vec4& x,
                    double step) {
    Mat4 dA, dU;  // (nu, mu) = d_nu of component mu
    for (int nu = 0; nu < 4; ++nu) {
        const double h = step * std::max(1.0, std::abs(x[nu]));
        Vec4 dx = Vec4::Zero();
        dx[nu] = h;
        const Vec4 ap = a_of(x + dx), am = a_of(x - dx);
        const Vec4 up = u_of(x + dx), um = u_of(x - dx);
        for (int mu = 0; mu < 4; ++mu) {
            dA(nu, mu) = (ap[mu] - am[mu]) / (2.0 * h);
            dU(nu, mu) = (up[mu] - um[mu]) / (2.0 * h);
        }
    }
    const Vec4 u0 = u_of(x), a0 = a_of(x);
    Vec4 lie;
    for (int b = 0; b < 4; ++b) {
        double s = 0.0;
        for (int m = 0; m < 4; ++m) s += u0[m] * dA(m, b) + a0[m] * dU(b, m);
        lie[b] = s;
    }
    return lie;
}

double horizontality_defect(const Kinematics& k, double c) {
    const double a_dot_u = std::abs(mdot(k.a, k.u));
    const Vec4 tu = k.theta * k.u, wu = k.omega * k.u;
    return std::max({tu.cwiseAbs().maxCoeff(), wu.cwiseAbs().maxCoeff(), a_dot_u / (c * c)});
}

}  // namespace

TEST_CASE("velocity fields are normalized on their declared domains", "[rigid]") {
    std::mt19937_64 g(90001);
    for (double c : {1.0, 2.5}) {
        const VelocityField cf = constant_field(Vec3(0.3, -0.2, 0.55), c);
        const VelocityField bf = boost_killing_field(c);
        const VelocityField rf = rotation_killing_field(0.4, c);
        for (int i = 0; i < 50; ++i) {
            const Vec4 xc(testutil::uniform(g, -3, 3), testutil::uniform(g, -3, 3),
                          testutil::uniform(g, -3, 3), testutil::uniform(g, -3, 3));
            REQUIRE(mdot(eval_velocity(cf, xc), eval_velocity(cf, xc)) ==
                    Catch::Approx(c * c).margin(1e-10 * std::max(1.0, c * c)));

            const double ct = testutil::uniform(g, -1.0, 1.0);
            const Vec4 xb(ct, std::abs(ct) + testutil::uniform(g, 0.1, 3.0),
                          testutil::uniform(g, -2, 2), testutil::uniform(g, -2, 2));
            REQUIRE(in_domain(bf, xb));
            REQUIRE(mdot(eval_velocity(bf, xb), eval_velocity(bf, xb)) ==
                    Catch::Approx(c * c).margin(1e-10 * std::max(1.0, c * c)));

            const double rho = testutil::uniform(g, 0.0, 0.9) * c / 0.4;
            const double phi = testutil::uniform(g, 0.0, 6.28);
            const Vec4 xr(testutil::uniform(g, -2, 2), rho * std::cos(phi),
                          rho * std::sin(phi), testutil::uniform(g, -2, 2));
            REQUIRE(mdot(eval_velocity(rf, xr), eval_velocity(rf, xr)) ==
                    Catch::Approx(c * c).margin(1e-10 * std::max(1.0, c * c)));
        }
    }

    // Domain violations and malformed fields.
    const VelocityField bf = boost_killing_field();
    REQUIRE_THROWS_AS(eval_velocity(bf, Vec4(1.0, 0.5, 0, 0)), std::domain_error);
    REQUIRE_THROWS_AS(eval_velocity(bf, Vec4(0.0, -1.0, 0, 0)), std::domain_error);
    const VelocityField rf = rotation_killing_field(0.5);
    REQUIRE_THROWS_AS(eval_velocity(rf, Vec4(0.0, 2.0, 0.1, 0)), std::domain_error);
    REQUIRE(in_domain(rf, Vec4(0.0, 1.9, 0.0, 0.0)));

    VelocityField bad;
    REQUIRE_THROWS_AS(eval_velocity(bad, Vec4::Zero()), std::invalid_argument);
    bad.u = [](const Vec4&) { return Vec4(1.0, 0.5, 0.0, 0.0); };  // u.u != c^2
    REQUIRE_THROWS_AS(eval_velocity(bad, Vec4::Zero()), std::logic_error);

    REQUIRE_THROWS_AS(constant_field(Vec3(0.8, 0.8, 0.0)), std::domain_error);
}

TEST_CASE("kinematic decomposition splits the velocity gradient", "[rigid]") {
    // Constant congruence: everything vanishes.
    const Kinematics kc = decompose_kinematics(constant_field(Vec3(0.4, 0.1, -0.3)),
                                               Vec4(0.7, -1.2, 0.4, 2.0));
    REQUIRE(kc.theta.cwiseAbs().maxCoeff() == 0.0);
    REQUIRE(kc.omega.cwiseAbs().maxCoeff() == 0.0);
    REQUIRE(kc.a.cwiseAbs().maxCoeff() == 0.0);
    REQUIRE(kc.reconstruction_residual == 0.0);

    // Boost flow: rigid, irrotational, with proper acceleration c^2/x0 on the
    // orbit through (0, x0).
    for (double c : {1.0, 2.0}) {
        const VelocityField bf = boost_killing_field(c);
        for (double x0 : {0.5, 1.0, 2.0, 7.5}) {
            const Kinematics k = decompose_kinematics(bf, Vec4(0.0, x0, 0.0, 0.0));
            REQUIRE(k.theta.cwiseAbs().maxCoeff() < 1e-13);
            REQUIRE(k.omega.cwiseAbs().maxCoeff() < 1e-13);
            const double amod = std::sqrt(std::abs(mdot(k.a, k.a)));
            REQUIRE(amod == Catch::Approx(c * c / x0).margin(1e-6));
            REQUIRE(horizontality_defect(k, c) < 1e-10);

            // Same orbit at nonzero Killing time: the modulus is carried along.
            const Vec4 p = boost_flow(x0, 0.6 * x0 / c, c);
            const Kinematics kt = decompose_kinematics(bf, p);
            REQUIRE(std::sqrt(std::abs(mdot(kt.a, kt.a))) ==
                    Catch::Approx(c * c / x0).margin(1e-6));
        }
    }

    // Rotation flow at orbit speed kappa rho = c / 2: rigid but rotating.
    const VelocityField rf = rotation_killing_field(0.5);
    for (double phi : {0.0, 1.1, 3.9}) {
        const Vec4 x(0.4, std::cos(phi), std::sin(phi), -0.7);
        const Kinematics k = decompose_kinematics(rf, x);
        REQUIRE(k.theta.cwiseAbs().maxCoeff() < 1e-12);
        REQUIRE(k.omega.cwiseAbs().maxCoeff() > 0.1);
        REQUIRE(horizontality_defect(k, 1.0) < 1e-10);
        REQUIRE(k.reconstruction_residual < 1e-12);
        REQUIRE((k.omega + k.omega.transpose()).cwiseAbs().maxCoeff() < 1e-12);
        REQUIRE((k.theta - k.theta.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    }

    // Finite differences agree with the analytic Jacobian to second order.
    const Vec4 xs(0.3, 1.0, 0.2, -0.4);
    const Kinematics exact = decompose_kinematics(rf, xs);
    auto fd_err = [&](double h) {
        const Kinematics k = decompose_kinematics(without_jacobian(rf), xs, h);
        double e = (k.theta - exact.theta).cwiseAbs().maxCoeff();
        e = std::max(e, (k.omega - exact.omega).cwiseAbs().maxCoeff());
        e = std::max(e, (k.a - exact.a).cwiseAbs().maxCoeff());
        return e;
    };
    const double e1 = fd_err(2e-3), e2 = fd_err(1e-3);
    REQUIRE(e1 / e2 == Catch::Approx(4.0).margin(1.5));
    REQUIRE(fd_err(1e-5) < 1e-9);

    // Projection keeps the finite-difference split horizontal; the residual
    // slack is the O(h^2) error of the acceleration itself.
    const Kinematics kfd = decompose_kinematics(without_jacobian(rf), xs, 1e-4);
    REQUIRE(horizontality_defect(kfd, 1.0) < 1e-9);
    REQUIRE((kfd.theta * kfd.u).cwiseAbs().maxCoeff() < 1e-12);
    REQUIRE((kfd.omega * kfd.u).cwiseAbs().maxCoeff() < 1e-12);
    REQUIRE(kfd.reconstruction_residual < 1e-7);

    REQUIRE_THROWS_AS(decompose_kinematics(boost_killing_field(), Vec4(2.0, 1.0, 0, 0)),
                      std::domain_error);
}

TEST_CASE("born residual certifies rigidity", "[rigid]") {
    const Vec4 xb(0.2, 1.5, 0.3, -0.2);
    const Vec4 xr(0.4, 1.0, -0.3, 0.8);

    // Killing flows are rigid: residual at the working step stays below 1e-8.
    REQUIRE(born_residual(boost_killing_field(), xb, 1e-5) < 1e-8);
    REQUIRE(born_residual(rotation_killing_field(0.5), xr, 1e-5) < 1e-8);
    REQUIRE(born_residual(boost_killing_field(2.0), Vec4(0.2, 2.5, 0.3, -0.2), 1e-5) < 1e-8);
    REQUIRE(born_residual(constant_field(Vec3(0.2, 0.5, -0.1)), xb, 1e-5) < 1e-14);

    // The residual of a rigid flow is pure truncation error, so halving the
    // step divides it by about four.
    for (const VelocityField& f : {boost_killing_field(), rotation_killing_field(0.5)}) {
        const Vec4& x = f.kind == "boost_killing" ? xb : xr;
        const double r1 = born_residual(f, x, 2e-3);
        const double r2 = born_residual(f, x, 1e-3);
        REQUIRE(r1 / r2 == Catch::Approx(4.0).margin(1.2));
    }

    // Shear witness: residual bounded away from zero and equal to twice the
    // sup norm of theta.
    const VelocityField sf = shear_field(0.6, 1.0);
    const Vec4 xsh(0.1, 0.5, 0.0, 0.0);
    const double r = born_residual(sf, xsh, 1e-5);
    REQUIRE(r > 0.05);
    const Kinematics ks = decompose_kinematics(sf, xsh, 1e-5);
    REQUIRE(r == Catch::Approx(2.0 * ks.theta.cwiseAbs().maxCoeff()).margin(1e-6));

    REQUIRE_THROWS_AS(born_residual(boost_killing_field(), Vec4(1.0, 0.2, 0, 0)),
                      std::domain_error);
}

TEST_CASE("rescaling the generator preserves the rigidity verdict", "[rigid]") {
    auto scale = [](const Vec4& x) { return 1.0 + 0.3 * std::sin(x[0] + x[1] - x[2]); };

    // Rigid points stay rigid under any positive reparameterization.
    REQUIRE(scaled_born_residual(boost_killing_field(), scale, Vec4(0.2, 1.5, 0.3, -0.2),
                                 1e-5) < 1e-7);
    REQUIRE(scaled_born_residual(rotation_killing_field(0.5), scale,
                                 Vec4(0.4, 1.0, -0.3, 0.8), 1e-5) < 1e-7);

    // Non-rigid points scale their residual by exactly the local factor.
    const VelocityField sf = shear_field(0.6, 1.0);
    const Vec4 x(0.1, 0.5, 0.2, -0.3);
    const double plain = born_residual(sf, x, 1e-5);
    const double scaled = scaled_born_residual(sf, scale, x, 1e-5);
    REQUIRE(scaled == Catch::Approx(scale(x) * plain).margin(1e-6));

    REQUIRE_THROWS_AS(scaled_born_residual(boost_killing_field(), nullptr,
                                           Vec4(0.2, 1.5, 0.3, -0.2), 1e-5),
                      std::invalid_argument);
}

TEST_CASE("vorticity transport and closed acceleration one-form", "[rigid]") {
    // Rotating rigid flow: the vorticity is carried along the flow and the
    // acceleration one-form is exact.
    const VelocityField rf = rotation_killing_field(0.5);
    for (const Vec4& x : {Vec4(0.0, 1.0, 0.0, 0.0), Vec4(0.4, 0.3, 0.9, -0.5),
                          Vec4(-1.2, -0.8, 0.6, 2.0)}) {
        REQUIRE(vorticity_transport_residual(rf, x, 1e-5) < 1e-6);
        REQUIRE(accel_curl_residual(rf, x, 1e-5) < 1e-8);
    }

    // Boost flow: vorticity-free, and Killing, so both residuals vanish.
    const Vec4 xb(0.2, 1.5, 0.3, -0.2);
    const Kinematics kb = decompose_kinematics(boost_killing_field(), xb);
    REQUIRE(kb.omega.cwiseAbs().maxCoeff() < 1e-13);
    REQUIRE(vorticity_transport_residual(boost_killing_field(), xb, 1e-5) < 1e-10);
    REQUIRE(accel_curl_residual(boost_killing_field(), xb, 1e-5) < 1e-8);

    REQUIRE(vorticity_transport_residual(constant_field(Vec3(0.3, 0.0, 0.1)), xb) == 0.0);
}

TEST_CASE("boost flow, killing time and eigentime", "[rigid]") {
    // tau = 0 sits at (0, x0); the orbit conserves x^2 - (ct)^2 = x0^2.
    REQUIRE(boost_flow(2.0, 0.0)[0] == 0.0);
    REQUIRE(boost_flow(2.0, 0.0)[1] == 2.0);
    for (double c : {1.0, 2.0}) {
        for (double x0 : {0.5, 1.0, 2.0}) {
            for (int i = -6; i <= 6; ++i) {
                const double tau = 0.33 * i * x0 / c;
                const Vec4 p = boost_flow(x0, tau, c);
                REQUIRE(p[1] * p[1] - p[0] * p[0] == Catch::Approx(x0 * x0).margin(1e-12));
                // Killing time equals c tau / x0 along the eigentime orbit.
                REQUIRE(killing_time(p[0], p[1]) ==
                        Catch::Approx(c * tau / x0).margin(1e-12));
                // The flow tangent is the boost Killing field itself.
                const Vec4 u = eval_velocity(boost_killing_field(c), p);
                const Vec4 zd = hyperbolic_worldline(x0, c).velocity(tau);
                REQUIRE((u - zd).cwiseAbs().maxCoeff() < 1e-11);
            }
        }
    }

    // Hyperbolic worldline invariants: unit tangent, orthogonal acceleration
    // of modulus c^2/x0, and no horizontal jerk (constant acceleration).
    const WorldLine hw = hyperbolic_worldline(2.0, 1.5);
    for (double tau : {-1.2, 0.0, 0.7, 2.4}) {
        const Vec4 zd = hw.velocity(tau), zdd = hw.acceleration(tau), zj = hw.jerk(tau);
        REQUIRE(mdot(zd, zd) == Catch::Approx(1.5 * 1.5).margin(1e-11));
        REQUIRE(std::abs(mdot(zd, zdd)) < 1e-11);
        REQUIRE(std::sqrt(std::abs(mdot(zdd, zdd))) ==
                Catch::Approx(1.5 * 1.5 / 2.0).margin(1e-11));
        const Vec4 pj = zj - (mdot(zd, zj) / (1.5 * 1.5)) * zd;
        REQUIRE(pj.cwiseAbs().maxCoeff() < 1e-11);
    }

    // Constant Killing-time hyperplanes cut the orbits orthogonally: the
    // gradient of the time label is K-flat over K.K.
    for (const Vec4& p : {Vec4(0.0, 1.0, 0, 0), Vec4(0.8, 2.0, 0, 0), Vec4(-1.0, 3.1, 0, 0)}) {
        const double h = 1e-6;
        const double gt = (killing_time(p[0] + h, p[1]) - killing_time(p[0] - h, p[1])) / (2 * h);
        const double gx = (killing_time(p[0], p[1] + h) - killing_time(p[0], p[1] - h)) / (2 * h);
        const double K2 = p[1] * p[1] - p[0] * p[0];
        REQUIRE(gt == Catch::Approx(p[1] / K2).margin(1e-8));
        REQUIRE(gx == Catch::Approx(-p[0] / K2).margin(1e-8));
    }

    // Eigentime to reach a given orbit speed.
    REQUIRE(eigentime_to_speed(0.0, 1.0) == 0.0);
    REQUIRE(eigentime_to_speed(0.6, 1.0) == Catch::Approx(std::atanh(0.6)).margin(1e-14));
    REQUIRE(eigentime_to_speed(1.2, 2.0, 2.0) ==
            Catch::Approx(std::atanh(0.6)).margin(1e-14));
    // Consistency with the flow: the orbit speed at tau is tanh(c tau / x0).
    const Vec4 q = boost_flow(1.0, eigentime_to_speed(0.6, 1.0));
    REQUIRE(q[0] / q[1] == Catch::Approx(0.6).margin(1e-12));

    REQUIRE_THROWS_AS(boost_flow(-1.0, 0.3), std::domain_error);
    REQUIRE_THROWS_AS(killing_time(1.0, 1.0), std::domain_error);
    REQUIRE_THROWS_AS(killing_time(0.5, -2.0), std::domain_error);
    REQUIRE_THROWS_AS(eigentime_to_speed(1.0, 1.0), std::domain_error);
    REQUIRE_THROWS_AS(eigentime_to_speed(0.5, 0.0), std::domain_error);
}

TEST_CASE("irrotational field generated by a worldline", "[rigid]") {
    // A straight worldline generates the matching constant congruence.
    {
        const Vec3 beta(0.25, -0.1, 0.4);
        const IrrotationalField ir =
            irrotational_from_worldline(inertial_worldline(Vec4::Zero(), beta), -5.0, 5.0);
        const VelocityField cf = constant_field(beta);
        std::mt19937_64 g(90002);
        for (int i = 0; i < 20; ++i) {
            const Vec4 x(testutil::uniform(g, -2, 2), testutil::uniform(g, -2, 2),
                         testutil::uniform(g, -2, 2), testutil::uniform(g, -2, 2));
            REQUIRE((ir.u(x) - eval_velocity(cf, x)).cwiseAbs().maxCoeff() < 1e-11);
        }
        const Kinematics k = decompose_kinematics(ir.field(), Vec4(0.3, 0.1, -0.2, 0.5));
        REQUIRE(k.theta.cwiseAbs().maxCoeff() < 1e-12);
        REQUIRE(k.omega.cwiseAbs().maxCoeff() < 1e-12);
        REQUIRE(k.a.cwiseAbs().maxCoeff() < 1e-12);
    }

    // The hyperbolic worldline regenerates the boost Killing flow on the
    // overlap of their domains, with a closed acceleration one-form.
    {
        const IrrotationalField ir =
            irrotational_from_worldline(hyperbolic_worldline(2.0), -3.0, 3.0);
        const VelocityField bf = boost_killing_field();
        for (const Vec4& x : {Vec4(0.0, 2.0, 0.0, 0.0), Vec4(0.5, 2.8, 1.0, -0.6),
                              Vec4(-0.9, 1.6, 0.2, 0.4)}) {
            REQUIRE((ir.u(x) - eval_velocity(bf, x)).cwiseAbs().maxCoeff() < 1e-9);
            REQUIRE((ir.jacobian(x) - bf.jacobian(x)).cwiseAbs().maxCoeff() < 1e-9);
            REQUIRE(ir.lie_accel_oneform(x).cwiseAbs().maxCoeff() < 1e-11);
        }
        REQUIRE(accel_curl_residual(ir.field(), Vec4(0.5, 2.8, 1.0, -0.6), 1e-5) < 1e-8);
    }

    // Curved worldline with nonconstant acceleration.
    const WorldLine wl = circular_worldline(0.3, 0.5);
    const IrrotationalField ir = irrotational_from_worldline(wl, -4.0, 4.0);
    const VelocityField fld = ir.field();
    const double c2 = 1.0;

    for (double tau0 : {-0.8, 0.37, 1.6}) {
        const Vec4 z0 = wl.position(tau0), zd0 = wl.velocity(tau0);
        const Vec4 e1 = leaf_direction(zd0, Vec4(0, 1, 0, 0), {}, 1.0);
        const Vec4 e2 = leaf_direction(zd0, Vec4(0, 0, 1, 0), {e1}, 1.0);

        // On the worldline sigma recovers the parameter and the lapse is 1.
        REQUIRE(ir.sigma(z0) == Catch::Approx(tau0).margin(1e-10));
        REQUIRE(ir.lapse(z0) == Catch::Approx(1.0).margin(1e-10));

        for (double off : {0.0, 0.35, -0.5}) {
            const Vec4 x = z0 + off * e1 + 0.4 * off * e2;
            // Rigid and irrotational through the analytic Jacobian...
            const Kinematics k = decompose_kinematics(fld, x);
            REQUIRE(k.theta.cwiseAbs().maxCoeff() < 1e-12);
            REQUIRE(k.omega.cwiseAbs().maxCoeff() < 1e-12);
            REQUIRE(mdot(k.u, k.u) == Catch::Approx(1.0).margin(1e-12));
            // ... and through plain finite differences of the field.
            const Kinematics kf = decompose_kinematics(without_jacobian(fld), x, 1e-5);
            REQUIRE(kf.theta.cwiseAbs().maxCoeff() < 1e-6);
            REQUIRE(kf.omega.cwiseAbs().maxCoeff() < 1e-6);
            REQUIRE((kf.grad_u_flat - k.grad_u_flat).cwiseAbs().maxCoeff() < 1e-6);
            REQUIRE(born_residual(fld, x, 1e-5) < 1e-7);
        }

        // Lie transport of the acceleration one-form: finite differences
        // against the closed form, on and off the worldline.
        auto u_of = [&](const Vec4& y) { return ir.u(y); };
        auto a_of = [&](const Vec4& y) { return ir.accel_oneform(y); };
        for (double off : {0.0, 0.35}) {
            const Vec4 x = z0 + off * e1;
            const Vec4 fd = lie_oneform_fd(u_of, a_of, x, 1e-5);
            const Vec4 closed = ir.lie_accel_oneform(x);
            REQUIRE((fd - closed).cwiseAbs().maxCoeff() < 1e-6);
            REQUIRE(closed.cwiseAbs().maxCoeff() > 0.01);  // acceleration not constant
        }
        // On the worldline the closed form reduces to the horizontal jerk
        // over the squared lapse.
        {
            const double N = ir.lapse(z0);
            const Vec4 zj = wl.jerk(tau0);
            const Vec4 pj = zj - (mdot(zd0, zj) / c2) * zd0;
            const Vec4 reduced = lower4(pj) / (N * N);
            const Vec4 fd = lie_oneform_fd(u_of, a_of, z0, 1e-5);
            REQUIRE((fd - reduced).cwiseAbs().maxCoeff() < 1e-5);
        }

        // Leaves are flat: in-leaf straight lines keep the hyperplane label
        // and stay orthogonal to u; in-leaf curves have horizontal second
        // derivative.
        for (double s : {-0.6, -0.2, 0.3, 0.7}) {
            const Vec4 x = z0 + s * e1;
            REQUIRE(ir.sigma(x) == Catch::Approx(tau0).margin(1e-9));
            REQUIRE(std::abs(mdot(ir.u(x), e1)) < 1e-9);
        }
        for (double s : {0.0, 0.9, 2.2}) {
            const double amp = 0.3;
            const Vec4 w = z0 + amp * std::cos(s) * e1 + amp * std::sin(s) * e2;
            const Vec4 wdd = -amp * std::cos(s) * e1 - amp * std::sin(s) * e2;
            const Vec4 u = ir.u(w);
            const Vec4 proj = wdd - (mdot(u, wdd) / c2) * u;
            REQUIRE((proj - wdd).cwiseAbs().maxCoeff() < 1e-8);
        }
    }

    // Outside the tube. Behind the horizon of the hyperbolic orbit the unique
    // orthogonal hyperplane has negative lapse; likewise past the center of
    // curvature of the circular orbit (short range keeps distant leaves out
    // of play); and remote events find no hyperplane at all within range.
    {
        const IrrotationalField irh =
            irrotational_from_worldline(hyperbolic_worldline(2.0), -3.0, 3.0);
        REQUIRE_THROWS_AS(irh.sigma(Vec4(0.0, -1.0, 0.0, 0.0)), std::domain_error);

        const IrrotationalField shortr = irrotational_from_worldline(wl, -0.5, 0.5);
        const Vec4 z0 = wl.position(0.0);
        const Vec4 outward(0.0, 1.0, 0.0, 0.0);  // radial at tau = 0
        REQUIRE_THROWS_AS(shortr.sigma(z0 + 8.0 * outward), std::domain_error);

        REQUIRE_THROWS_AS(ir.sigma(Vec4(100.0, 0.1, 0.0, 0.0)), std::domain_error);
    }

    // Warm-started queries agree with a fresh evaluator.
    {
        const IrrotationalField fresh = irrotational_from_worldline(wl, -4.0, 4.0);
        Vec4 probe(0.21, 0.64, 0.1, -0.3);
        double walked = 0.0;
        for (int i = 0; i < 40; ++i)
            walked = ir.sigma(Vec4(0.02 * i, 0.6, 0.05 * i - 1.0, 0.0));
        (void)walked;
        REQUIRE(ir.sigma(probe) == Catch::Approx(fresh.sigma(probe)).margin(1e-12));
    }

    REQUIRE_THROWS_AS(irrotational_from_worldline(wl, 2.0, 2.0), std::invalid_argument);
    REQUIRE_THROWS_AS(irrotational_from_worldline(WorldLine{}, 0.0, 1.0),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(irrotational_from_worldline(wl, -1.0, 1.0, 1), std::invalid_argument);
}

TEST_CASE("sampled worldlines reproduce the closed forms", "[rigid]") {
    // Spline of the hyperbolic orbit: near-unit tangent and a field close to
    // the closed-form one.
    const WorldLine hw = hyperbolic_worldline(2.0);
    std::vector<double> ts;
    std::vector<Vec4> ys;
    for (int i = 0; i <= 160; ++i) {
        const double t = -2.0 + 4.0 * i / 160.0;
        ts.push_back(t);
        ys.push_back(hw.position(t));
    }
    const WorldLine sw = worldline_from_samples(ts, ys);
    for (double tau : {-1.4, -0.3, 0.0, 0.9, 1.7}) {
        REQUIRE(mdot(sw.velocity(tau), sw.velocity(tau)) == Catch::Approx(1.0).margin(1e-5));
        REQUIRE((sw.position(tau) - hw.position(tau)).cwiseAbs().maxCoeff() < 1e-7);
    }
    REQUIRE_FALSE(static_cast<bool>(sw.jerk));

    const IrrotationalField irs = irrotational_from_worldline(sw, -1.2, 1.2);
    const IrrotationalField irh = irrotational_from_worldline(hyperbolic_worldline(2.0), -1.2, 1.2);
    for (const Vec4& x : {Vec4(0.0, 2.0, 0.3, 0.0), Vec4(0.4, 2.5, -0.8, 1.0),
                          Vec4(-0.6, 1.8, 0.0, -0.4)}) {
        REQUIRE(std::abs(irs.sigma(x) - irh.sigma(x)) < 1e-6);
        REQUIRE((irs.u(x) - irh.u(x)).cwiseAbs().maxCoeff() < 1e-6);
        REQUIRE(mdot(irs.u(x), irs.u(x)) == Catch::Approx(1.0).margin(1e-12));
    }
    const Kinematics k = decompose_kinematics(irs.field(), Vec4(0.4, 2.5, -0.8, 1.0));
    REQUIRE(k.theta.cwiseAbs().maxCoeff() < 1e-9);
    REQUIRE(k.omega.cwiseAbs().maxCoeff() < 1e-9);
    REQUIRE_THROWS_AS(irs.lie_accel_oneform(Vec4(0.0, 2.0, 0.3, 0.0)), std::logic_error);

    // Spline validation.
    REQUIRE_THROWS_AS(NaturalSpline4({0.0, 1.0}, {Vec4::Zero(), Vec4::Zero()}),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(NaturalSpline4({0.0, 1.0, 0.5}, {Vec4::Zero(), Vec4::Zero(), Vec4::Zero()}),
                      std::invalid_argument);
    const NaturalSpline4 sp({0.0, 1.0, 2.0}, {Vec4::Zero(), Vec4::Ones(), 2.0 * Vec4::Ones()});
    REQUIRE_THROWS_AS(sp.value(-0.1), std::domain_error);
    REQUIRE(sp.value(1.5)[2] == Catch::Approx(1.5).margin(1e-12));  // collinear data stay linear

    // Named forms.
    const WorldLine wn = worldline_from_name("hyperbolic:2.0");
    REQUIRE((wn.position(0.7) - hw.position(0.7)).cwiseAbs().maxCoeff() < 1e-14);
    const WorldLine wc = worldline_from_name("circular:0.6,0.5");
    const WorldLine wc2 = circular_worldline(0.3, 0.5);
    REQUIRE((wc.position(1.3) - wc2.position(1.3)).cwiseAbs().maxCoeff() < 1e-14);
    const WorldLine wi = worldline_from_name("line:0.2,-0.1,0.3", 2.0);
    REQUIRE((wi.velocity(5.0) - wi.velocity(-5.0)).cwiseAbs().maxCoeff() == 0.0);
    REQUIRE(mdot(wi.velocity(0.0), wi.velocity(0.0)) == Catch::Approx(4.0).margin(1e-12));
    REQUIRE_THROWS_AS(worldline_from_name("helix:1,2,3"), std::invalid_argument);
    REQUIRE_THROWS_AS(worldline_from_name("hyperbolic:abc"), std::invalid_argument);
    REQUIRE_THROWS_AS(worldline_from_name("circular:9.9,0.5"), std::domain_error);
}
