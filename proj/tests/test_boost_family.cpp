#include <catch2/catch_amalgamated.hpp>

#include <relkit/boost_family.hpp>
#include <relkit/lorentz.hpp>

#include <cmath>
#include <random>

#include "helpers.hpp"

using namespace relkit;

TEST_CASE("planar boost matrices", "[rp]") {
    for (double k : {-1.0, -0.25, 0.0, 0.5, 2.0})
        REQUIRE(inf_norm(boost_matrix_k(0.0, k) - Mat2::Identity()) == 0.0);

    // Lorentz regime: diagonal is the gamma factor and the matrix is the
    // coordinate transport, i.e. the inverse of the velocity-0.6 boost block.
    const Mat2 A = boost_matrix_k(0.6, -1.0);
    REQUIRE(A(0, 0) == Catch::Approx(1.25).margin(1e-14));
    const Mat4 inv_block = boost(Vec3(0.6, 0.0, 0.0)).inverse();
    REQUIRE(A(0, 0) == Catch::Approx(inv_block(0, 0)).margin(1e-13));
    REQUIRE(A(0, 1) == Catch::Approx(inv_block(0, 1)).margin(1e-13));
    REQUIRE(A(1, 0) == Catch::Approx(inv_block(1, 0)).margin(1e-13));
    REQUIRE(A(1, 1) == Catch::Approx(inv_block(1, 1)).margin(1e-13));

    // Galilei shear.
    const Mat2 S = boost_matrix_k(1.7, 0.0);
    REQUIRE(S(0, 0) == 1.0);
    REQUIRE(S(0, 1) == 0.0);
    REQUIRE(S(1, 0) == -1.7);
    REQUIRE(S(1, 1) == 1.0);

    std::mt19937_64 g(5001);
    for (int i = 0; i < 300; ++i) {
        const double k = testutil::uniform(g, -2.0, 2.0);
        double v = testutil::uniform(g, -3.0, 3.0);
        if (k < 0.0) v = testutil::uniform(g, -0.99, 0.99) / std::sqrt(-k);
        const Mat2 M = boost_matrix_k(v, k);
        REQUIRE(M.determinant() == Catch::Approx(1.0).margin(1e-12));
        REQUIRE(M(0, 0) == M(1, 1));
        // Inverse by velocity reversal.
        REQUIRE(inf_norm(boost_matrix_k(-v, k) * M - Mat2::Identity()) < 1e-12);
        // b = (a/v)(1/a^2 - 1) = k v a.
        if (std::abs(v) > 1e-3) {
            const double a = M(0, 0);
            REQUIRE(M(0, 1) == Catch::Approx((a / v) * (1.0 / (a * a) - 1.0)).margin(1e-12));
        }
    }

    // Outside the admissible spectrum for k < 0.
    REQUIRE_THROWS_AS(boost_matrix_k(1.0, -1.0), std::domain_error);
    REQUIRE_THROWS_AS(boost_matrix_k(3.0, -0.25), std::domain_error);
}

TEST_CASE("velocity composition across regimes", "[rp]") {
    REQUIRE(compose_velocity_k(1.2, 2.3, 0.0) == Catch::Approx(3.5).margin(1e-15));
    REQUIRE(compose_velocity_k(0.5, 0.5, -1.0) == Catch::Approx(0.8).margin(1e-15));

    // k > 0 pathologies: infinite composed velocity at v v' = 1/k, and a
    // negative outcome from two large positive inputs.
    REQUIRE_THROWS_AS(compose_velocity_k(2.0, 0.5, 1.0), std::overflow_error);
    REQUIRE(compose_velocity_k(2.0, 2.0, 1.0) == Catch::Approx(-4.0 / 3.0).margin(1e-15));

    std::mt19937_64 g(5002);
    for (int i = 0; i < 400; ++i) {
        const double k = testutil::uniform(g, -2.0, 2.0);
        double v = testutil::uniform(g, -3.0, 3.0);
        double vp = testutil::uniform(g, -3.0, 3.0);
        if (k < 0.0) {
            const double c = 1.0 / std::sqrt(-k);
            v = testutil::uniform(g, -0.99, 0.99) * c;
            vp = testutil::uniform(g, -0.99, 0.99) * c;
        }
        const double denom = 1.0 - k * v * vp;
        // Rounding in v'' is amplified by 1/denom; stay off the pole.
        if (std::abs(denom) < 1e-2) continue;
        const double vpp = compose_velocity_k(v, vp, k);
        // The diagonal factor's sensitivity grows like its cube; keep the
        // composite comfortably inside the admissible interval.
        if (1.0 + k * vpp * vpp <= 2e-2) continue;

        // Matrix-product oracle.  On the compact k > 0 spectrum the positive
        // root only covers half the rotation circle, so past the pole
        // (denominator < 0) the product equals minus the principal matrix.
        const Mat2 prod = boost_matrix_k(v, k) * boost_matrix_k(vp, k);
        const double sign = denom > 0.0 ? 1.0 : -1.0;
        REQUIRE(inf_norm(prod - sign * boost_matrix_k(vpp, k)) < 1e-12);
        // Velocity read off the product entries.
        REQUIRE(-prod(1, 0) / prod(1, 1) == Catch::Approx(vpp).margin(1e-11));

        // Functional equations for the diagonal factor, with the same branch
        // sign as the matrices.
        const double a = boost_diagonal_k(v, k), ap = boost_diagonal_k(vp, k);
        const double app = boost_diagonal_k(vpp, k);
        REQUIRE(a * ap * denom == Catch::Approx(sign * app).margin(1e-12));
        REQUIRE(a * ap * (v + vp) == Catch::Approx(sign * vpp * app).margin(1e-12));
    }

    // Lorentz regime: the invariant speed bounds every composition and
    // rapidities add.
    for (int i = 0; i < 300; ++i) {
        const double k = testutil::uniform(g, -4.0, -0.1);
        const double c = 1.0 / std::sqrt(-k);
        const double v = testutil::uniform(g, -0.999, 0.999) * c;
        const double vp = testutil::uniform(g, -0.999, 0.999) * c;
        const double vpp = compose_velocity_k(v, vp, k);
        REQUIRE(std::abs(vpp) < c);
        REQUIRE(std::atanh(vpp / c) ==
                Catch::Approx(std::atanh(v / c) + std::atanh(vp / c)).margin(1e-12));
    }
}

TEST_CASE("regime classification", "[rp]") {
    REQUIRE(classify_k(-1.0).kind == KinematicsKind::Lorentz);
    REQUIRE(classify_k(-1.0).c == Catch::Approx(1.0));
    REQUIRE(classify_k(-1.0 / 9.0).c == Catch::Approx(3.0).margin(1e-14));
    REQUIRE(classify_k(0.0).kind == KinematicsKind::Galilei);
    REQUIRE(classify_k(2.5).kind == KinematicsKind::EuclideanRotations);

    // Angle chart: planar matrices are rotations and composition is angle
    // addition modulo the tangent branch.
    std::mt19937_64 g(5003);
    for (int i = 0; i < 200; ++i) {
        const double k = testutil::uniform(g, 0.1, 4.0);
        const double v = testutil::uniform(g, -3.0, 3.0);
        const double vp = testutil::uniform(g, -3.0, 3.0);
        const double alpha = rotation_angle_k(v, k);
        const Mat2 M = boost_matrix_k(v, k);
        REQUIRE(M(0, 0) == Catch::Approx(std::cos(alpha)).margin(1e-13));
        // Orthogonality in the coordinates (t, sqrt(k) x) that normalize the
        // preserved quadratic form t^2 + k x^2.
        Mat2 scale = Mat2::Identity();
        scale(1, 1) = std::sqrt(k);
        const Mat2 Ms = scale * M * scale.inverse();
        REQUIRE(inf_norm(Ms.transpose() * Ms - Mat2::Identity()) < 1e-13);

        if (std::abs(1.0 - k * v * vp) > 1e-3) {
            const double sum = alpha + rotation_angle_k(vp, k);
            double wrapped = std::remainder(sum, M_PI);
            const double composed = rotation_angle_k(compose_velocity_k(v, vp, k), k);
            REQUIRE(std::remainder(wrapped - composed, M_PI) ==
                    Catch::Approx(0.0).margin(1e-11));
        }
    }
    REQUIRE_THROWS_AS(rotation_angle_k(1.0, -1.0), std::domain_error);
}
