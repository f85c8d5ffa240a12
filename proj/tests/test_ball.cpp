#include <catch2/catch_amalgamated.hpp>

#include <bergball/ball.hpp>

#include "oracles.hpp"

using namespace bergball;

namespace {
CVec pt2(Cplx a, Cplx b) {
    CVec z(2);
    z << a, b;
    return z;
}
}  // namespace

TEST_CASE("rho on reference points") {
    CHECK(rho(pt2(0.0, 0.0)) == 1.0);
    CHECK(rho(pt2(0.6, 0.0)) == Catch::Approx(0.64).margin(1e-15));
    CVec boundary(2);
    boundary << Cplx(0.0, 1.0), 0.0;
    CHECK(rho(boundary) == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("hermitian product") {
    CVec z = pt2(0.3, Cplx(0.0, 0.4));
    CHECK(std::abs(herm(z, z) - Cplx(0.25)) < 1e-15);
    CVec e1 = pt2(1.0, 0.0), e2 = pt2(0.0, 1.0);
    CHECK(std::abs(herm(e1, e2)) < 1e-15);
    CHECK(std::abs(herm(pt2(Cplx(0, 1), 0.0), pt2(0.5, 0.0)) - Cplx(0.0, 0.5)) < 1e-15);
    CVec w(3);
    w.setZero();
    CHECK_THROWS_AS(herm(z, w), std::invalid_argument);
}

TEST_CASE("moebius permutes origin and center") {
    Rng rng(7);
    for (int n : {1, 2, 3}) {
        for (int it = 0; it < 20; ++it) {
            CVec a = rng.ball_point(n, 0.95);
            Automorphism phi(a);
            CHECK((phi(CVec::Zero(n)) - a).norm() < 1e-14);
            CHECK(phi(a).norm() < 1e-13);
        }
    }
}

TEST_CASE("moebius with center zero is minus the identity") {
    Rng rng(8);
    CVec z = rng.ball_point(2);
    CHECK((moebius(CVec::Zero(2), z) + z).norm() == 0.0);
}

TEST_CASE("one-dimensional closed form") {
    CVec a(1), z(1);
    a << 0.5;
    z << 0.8;
    CHECK(std::abs(moebius(a, z)[0] - oracle::moebius_1d(0.5, 0.8)) < 1e-15);
    CHECK(std::abs(moebius(a, z)[0] - Cplx(-0.5)) < 1e-15);

    Rng rng(9);
    for (int it = 0; it < 50; ++it) {
        Cplx ac = rng.unit_disc() * 0.9, zc = rng.unit_disc() * 0.95;
        CVec av(1), zv(1);
        av << ac;
        zv << zc;
        CHECK(std::abs(moebius(av, zv)[0] - oracle::moebius_1d(ac, zc)) < 1e-13);
    }
}

TEST_CASE("involution and the modulus identity") {
    Rng rng(10);
    for (int n : {1, 2, 3}) {
        for (int it = 0; it < 300; ++it) {
            CVec a = rng.ball_point(n, 0.95);
            CVec z = rng.ball_point(n, 0.98);
            Automorphism phi(a);
            CVec w = phi(z);
            CHECK(w.norm() < 1.0);
            CHECK((phi(w) - z).norm() < 1e-10);
            double lhs = 1.0 - w.squaredNorm();
            double rhs = rho(a) * rho(z) / std::norm(1.0 - herm(z, a));
            CHECK(std::abs(lhs - rhs) < 1e-12);
        }
    }
}

TEST_CASE("pseudo-hyperbolic symmetry") {
    Rng rng(11);
    for (int it = 0; it < 100; ++it) {
        CVec a = rng.ball_point(2, 0.95), b = rng.ball_point(2, 0.95);
        CHECK(std::abs(pseudo_distance(a, b) - pseudo_distance(b, a)) < 1e-12);
    }
}

TEST_CASE("boundary maps to boundary") {
    Rng rng(12);
    CVec a = rng.ball_point(2, 0.8);
    CVec zeta = rng.sphere_point(2);
    CHECK(std::abs(moebius(a, zeta).norm() - 1.0) < 1e-12);
}

TEST_CASE("real part of 1 - <z,w> stays positive") {
    Rng rng(13);
    for (int it = 0; it < 500; ++it) {
        CVec z = rng.ball_point(2, 0.999), w = rng.sphere_point(2);
        CHECK((1.0 - herm(z, w)).real() > 0.0);
    }
}

TEST_CASE("center on the boundary is rejected") {
    CVec a(2);
    a << 1.0, 0.0;
    CHECK_THROWS_AS(Automorphism(a), std::invalid_argument);
}

TEST_CASE("jacobian determinant") {
    SECTION("center zero gives (-1)^n") {
        for (int n : {1, 2, 3}) {
            CVec z = CVec::Zero(n);
            Cplx expect = (n % 2 == 0) ? 1.0 : -1.0;
            CHECK(std::abs(moebius_jacobian(CVec::Zero(n), z) - expect) < 1e-15);
        }
    }
    SECTION("modulus closed form and value at the center") {
        Rng rng(14);
        for (int n : {1, 2, 3}) {
            for (int it = 0; it < 20; ++it) {
                CVec a = rng.ball_point(n, 0.8);
                CVec z = rng.ball_point(n, 0.8);
                double got = std::abs(moebius_jacobian(a, z));
                CHECK(got == Catch::Approx(oracle::moebius_jacobian_modulus(a, z)).epsilon(1e-10));
                double at_center = std::abs(moebius_jacobian(a, a));
                CHECK(at_center == Catch::Approx(std::pow(rho(a), -(n + 1) / 2.0)).epsilon(1e-10));
            }
        }
    }
    SECTION("matches the finite-difference determinant") {
        Rng rng(15);
        for (int it = 0; it < 10; ++it) {
            CVec a = rng.ball_point(2, 0.7), z = rng.ball_point(2, 0.7);
            Automorphism phi(a);
            Cplx fd = oracle::fd_jacobian_det([&](const CVec& w) { return phi(w); }, z);
            CHECK(std::abs(fd - phi.jacobian_det(z)) < 1e-7);
        }
    }
}
