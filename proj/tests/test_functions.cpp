#include <catch2/catch_amalgamated.hpp>

#include <bergball/functions.hpp>

#include "oracles.hpp"

using namespace bergball;

TEST_CASE("poly arithmetic and evaluation") {
    Poly z1 = Poly::coordinate(2, 0), z2 = Poly::coordinate(2, 1);
    Poly p = z1 * z1 + z2 * Cplx(2.0);
    CVec z(2);
    z << Cplx(0.3, 0.1), Cplx(-0.2, 0.4);
    CHECK(std::abs(p(z) - (z[0] * z[0] + 2.0 * z[1])) < 1e-15);
    CHECK(p.degree_bound == 2);

    Poly q = p - p;
    CHECK(q.coef.empty());
}

TEST_CASE("norms on reference functions") {
    SpaceParams sp{2, 2.0, 1.0};  // alpha p = 2
    BallRule br = build_ball_rule(2, sp.ap() - 1.0, 24, 10);

    SECTION("constant with weight") {
        double expect = std::pow(weighted_ball_mass(2, 1.0), 0.5);
        CHECK(norm_pa(Fun(Poly::constant(2, 1.0)), sp, br) == Catch::Approx(expect).epsilon(1e-10));
    }
    SECTION("hardy norm of constants and coordinates") {
        SpaceParams hardy{2, 2.0, 0.0};
        SphereRule sr = build_sphere_rule(2, 8);
        CHECK(norm_pa(Poly::constant(2, 1.0), hardy, sr) == Catch::Approx(1.0).epsilon(1e-12));
        CHECK(norm_pa(Poly::coordinate(2, 0), hardy, sr) ==
              Catch::Approx(std::sqrt(0.5)).epsilon(1e-12));
    }
    SECTION("absolute homogeneity") {
        Rng rng(31);
        Poly p = oracle::random_poly(rng, 2, 3);
        double n1 = norm_pa(Fun(p), sp, br);
        double n2 = norm_pa(Fun(p * Cplx(0.0, -2.5)), sp, br);
        CHECK(n2 == Catch::Approx(2.5 * n1).epsilon(1e-12));
    }
    SECTION("rule exponent mismatch is rejected") {
        BallRule wrong = build_ball_rule(2, 0.5, 8, 4);
        CHECK_THROWS_AS(norm_pa(Fun(Poly::constant(2, 1.0)), sp, wrong), std::invalid_argument);
    }
}

TEST_CASE("sequence norm") {
    CVec a0(2);
    a0 << 0.6, 0.0;
    PointSeq single(2, {a0});
    SpaceParams sp{2, 2.0, 0.5};
    TargetSeq t{{1.0}, false};
    CHECK(seq_norm(t, single, sp) ==
          Catch::Approx(std::pow(rho(a0), sp.seq_exponent())).epsilon(1e-14));

    TargetSeq zero{{0.0}, false};
    CHECK(seq_norm(zero, single, sp) == 0.0);

    CVec a1(2);
    a1 << 0.0, Cplx(0.0, 0.5);
    PointSeq two(2, {a0, a1});
    TargetSeq pair{{Cplx(1.0, 1.0), 2.0}, false};
    double w0 = std::abs(pair.values[0]) * std::pow(rho(a0), sp.seq_exponent());
    double w1 = std::abs(pair.values[1]) * std::pow(rho(a1), sp.seq_exponent());
    CHECK(seq_norm(pair, two, sp) == Catch::Approx(std::hypot(w0, w1)).epsilon(1e-14));

    TargetSeq sup{{Cplx(1.0, 1.0), 2.0}, true};
    CHECK(seq_norm(sup, two, sp) == Catch::Approx(2.0).epsilon(1e-14));

    TargetSeq bad{{1.0}, false};
    CHECK_THROWS_AS(seq_norm(bad, two, sp), std::invalid_argument);
}

TEST_CASE("ball pairing") {
    SpaceParams sp{2, 2.0, 1.0};
    BallRule br = build_ball_rule(2, sp.ap() - 1.0, 24, 10);

    VecFun ones{Fun(Poly::constant(2, 1.0))};
    Cplx self = pairing_ball(ones, ones, sp, br);
    CHECK(std::abs(self - Cplx(1.0 / 3.0)) < 1e-10);

    VecFun u{Fun(Poly::coordinate(2, 0))}, v{Fun(Poly::coordinate(2, 1))};
    CHECK(std::abs(pairing_ball(u, v, sp, br)) < 1e-13);

    SECTION("self pairing equals the squared vector norm") {
        Rng rng(32);
        VecFun fs{Fun(oracle::random_poly(rng, 2, 3)), Fun(oracle::random_poly(rng, 2, 3))};
        double n = vec_norm_pa(fs, sp, br);
        CHECK(std::abs(pairing_ball(fs, fs, sp, br) - Cplx(n * n)) < 1e-10 * (1 + n * n));
    }
    SECTION("hoelder inequality on random polynomial lists") {
        Rng rng(33);
        SpaceParams p4{2, 4.0, 0.5};
        SpaceParams q = p4.conjugate();
        CHECK(q.p == Catch::Approx(4.0 / 3.0));
        CHECK(q.ap() == Catch::Approx(p4.ap()));
        for (int it = 0; it < 5; ++it) {
            VecFun u2{Fun(oracle::random_poly(rng, 2, 3)), Fun(oracle::random_poly(rng, 2, 3))};
            VecFun v2{Fun(oracle::random_poly(rng, 2, 3)), Fun(oracle::random_poly(rng, 2, 3))};
            double lhs = std::abs(pairing_ball(u2, v2, p4, br));
            double rhs = vec_norm_pa(u2, p4, br) * vec_norm_pa(v2, q, br);
            CHECK(lhs <= rhs * (1.0 + 1e-9));
        }
    }
}

TEST_CASE("sphere pairing") {
    SphereRule sr = build_sphere_rule(2, 8);
    VecFun ones{Fun(Poly::constant(2, 1.0))};
    CHECK(std::abs(pairing_sphere(ones, ones, sr) - Cplx(1.0)) < 1e-13);
    VecFun w{Fun(Poly::coordinate(2, 0))}, h{Fun(Poly::coordinate(2, 1))};
    CHECK(std::abs(pairing_sphere(w, h, sr)) < 1e-13);
    CHECK(std::abs(pairing_sphere(w, w, sr) - Cplx(0.5)) < 1e-13);
}

TEST_CASE("wirtinger conjugate derivative") {
    CVec z(2);
    z << Cplx(0.2, 0.1), Cplx(-0.3, 0.2);

    SECTION("holomorphic polynomial annihilated to second order") {
        Rng rng(34);
        Poly p = oracle::random_poly(rng, 2, 4);
        CVec d = dbar_fd(Fun(p), z, 1e-4);
        CHECK(d.norm() < 1e-7);
    }
    SECTION("antiholomorphic coordinate") {
        Fun f(2, [](const CVec& w) { return std::conj(w[0]); });
        CVec d = dbar_fd(f, z, 1e-5);
        CHECK(std::abs(d[0] - Cplx(1.0)) < 1e-9);
        CHECK(std::abs(d[1]) < 1e-9);
    }
    SECTION("squared modulus") {
        Fun f(2, [](const CVec& w) { return Cplx(std::norm(w[0])); });
        CVec d = dbar_fd(f, z, 1e-5);
        CHECK(std::abs(d[0] - z[0]) < 1e-9);
        CHECK(std::abs(d[1]) < 1e-12);
    }
    SECTION("residual decreases with observed order >= 1.8") {
        Fun f(2, [](const CVec& w) { return std::exp(w[0] * w[1]) * std::conj(w[1]) * std::conj(w[1]); });
        auto exact = [&](const CVec& w) { return 2.0 * std::exp(w[0] * w[1]) * std::conj(w[1]); };
        double r1 = std::abs(dbar_fd(f, z, 2e-3)[1] - exact(z));
        double r2 = std::abs(dbar_fd(f, z, 1e-3)[1] - exact(z));
        CHECK(std::log2(r1 / r2) > 1.8);
    }
    SECTION("boundary margin enforced") {
        CVec near(2);
        near << 0.9999, 0.0;
        CHECK_THROWS_AS(dbar_fd(Fun(Poly::coordinate(2, 0)), near, 1e-3), std::invalid_argument);
    }
}

TEST_CASE("point sequence validation") {
    CVec a(2), b(2);
    a << 0.5, 0.0;
    b << 0.5, 0.0;
    CHECK_THROWS_AS(PointSeq(2, {a, b}), std::invalid_argument);
    b << 2.0, 0.0;
    CHECK_THROWS_AS(PointSeq(2, {b}), std::invalid_argument);
}
