#include <doctest.h>

#include <random>

#include "qapprox/forms.hpp"

using namespace qapprox;

TEST_CASE("form evaluation") {
    auto I2 = QuadraticForm::identity(2);
    CHECK(I2.evaluate({Rat(3, 5), Rat(4, 5)}) == Rat(1));

    auto d12 = QuadraticForm::diagonal({Int(1), Int(2)});
    CHECK(d12.evaluate({Rat(1), Rat(2)}) == Rat(9));
    CHECK(d12.evaluate_int({Int(1), Int(2)}) == 9);

    IndefiniteLift lift(d12);
    CHECK(lift.evaluate({Rat(1), Rat(2), Rat(3)}) == Rat(0));
    CHECK(lift.evaluate_int({Int(1), Int(2), Int(3)}) == 0);

    CHECK_THROWS(I2.evaluate({Rat(1)}));
}

TEST_CASE("lift bilinear values") {
    IndefiniteLift F0(QuadraticForm::identity(2));
    CHECK(F0.bilinear_int({Int(1), Int(0), Int(0)}, {Int(0), Int(0), Int(1)}) == 0);
    CHECK(F0.bilinear_int({Int(1), Int(0), Int(1)}, {Int(1), Int(0), Int(1)}) == 0);

    IndefiniteLift F(QuadraticForm::diagonal({Int(1), Int(2)}));
    // hand-expanded (F(u+v) - F(u) - F(v)) / 2 with u=(1,2,3), v=(1,0,0)
    CHECK(F.bilinear_int({Int(1), Int(2), Int(3)}, {Int(1), Int(0), Int(0)}) == 1);
}

TEST_CASE("bilinear is symmetric, additive, and diagonal-consistent") {
    IndefiniteLift F(QuadraticForm(2, {{Int(2), Int(1)}, {Int(1), Int(3)}}));
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-9, 9);
    for (int it = 0; it < 200; ++it) {
        IntVec u{Int(d(rng)), Int(d(rng)), Int(d(rng))};
        IntVec v{Int(d(rng)), Int(d(rng)), Int(d(rng))};
        IntVec w{Int(d(rng)), Int(d(rng)), Int(d(rng))};
        CHECK(F.bilinear_int(u, v) == F.bilinear_int(v, u));
        CHECK(F.bilinear_int(u, u) == F.evaluate_int(u));
        IntVec vw{v[0] + w[0], v[1] + w[1], v[2] + w[2]};
        CHECK(F.bilinear_int(u, vw) == F.bilinear_int(u, v) + F.bilinear_int(u, w));
    }
}

TEST_CASE("positive definiteness by leading minors") {
    CHECK(QuadraticForm::diagonal({Int(1), Int(2)}).is_positive_definite());
    QuadraticForm hex2(2, {{Int(2), Int(1)}, {Int(1), Int(2)}});
    CHECK(hex2.is_positive_definite());
    QuadraticForm indef(2, {{Int(1), Int(2)}, {Int(2), Int(1)}});
    CHECK_FALSE(indef.is_positive_definite());
    QuadraticForm zero1(1, {{Int(0)}});
    CHECK_FALSE(zero1.is_positive_definite());
    CHECK_THROWS(QuadraticForm(2, {{Int(1), Int(2)}, {Int(3), Int(1)}}));
}

TEST_CASE("lift coefficient matrix") {
    IndefiniteLift F(QuadraticForm::diagonal({Int(1), Int(2)}));
    IntMat c = F.coeff_matrix();
    REQUIRE(c.size() == 3);
    CHECK(c[0][0] == 1);
    CHECK(c[1][1] == 2);
    CHECK(c[2][2] == -1);
    CHECK(c[0][1] == 0);
}

TEST_CASE("ball volumes from the recurrence") {
    Enclosure pi = Enclosure::pi(128);
    CHECK(ball_volume(0, 128).contains(Rat(1)));
    CHECK(ball_volume(1, 128).contains(Rat(2)));
    CHECK(ball_volume(2, 128).intersects(pi));
    CHECK(ball_volume(3, 128).intersects(pi * Enclosure::from_rat(Rat(4, 3), 128)));
    CHECK(ball_volume(4, 128).intersects(pi.square() / Enclosure::from_int(2L, 128)));
}

TEST_CASE("constants for the circle") {
    auto c = compute_constants(QuadraticForm::identity(2), 128);
    Enclosure pi = Enclosure::pi(256);
    CHECK(c.v_f.intersects(pi));

    // C_f = 15552 / pi^3 ~ 501.63
    Enclosure oracle = Enclosure::from_int(15552L, 256) / pi.pow_ui(3);
    CHECK(c.C_f.intersects(oracle));
    CHECK(c.C_f.lower_rat() > Rat(501));
    CHECK(c.C_f.upper_rat() < Rat(502));

    // kappa_f = 6 C_f^2 ~ 1.5097e6
    CHECK(c.kappa_f.intersects(Enclosure::from_int(6L, 128) * c.C_f.square()));
    CHECK(c.kappa_f.lower_rat() > Rat(1509000));
    CHECK(c.kappa_f.upper_rat() < Rat(1510000));
}

TEST_CASE("constants for the 3-sphere") {
    auto c = compute_constants(QuadraticForm::identity(3), 128);
    Enclosure pi = Enclosure::pi(256);
    Enclosure v = pi * Enclosure::from_rat(Rat(4, 3), 256);
    CHECK(c.v_f.intersects(v));
    // 4^4 6^3 2^9 / (4 pi / 3)^4 ~ 9.19e4
    // 4^4 * 6^3 * 2^9 = 28311552
    Enclosure oracle = Enclosure::from_int(28311552L, 256) / v.pow_ui(4);
    CHECK(c.C_f.intersects(oracle));
    CHECK(c.C_f.lower_rat() > Rat(91000));
    CHECK(c.C_f.upper_rat() < Rat(93000));
}

TEST_CASE("constant invariants across forms") {
    std::vector<QuadraticForm> forms = {
        QuadraticForm::identity(2),
        QuadraticForm::diagonal({Int(1), Int(2)}),
        QuadraticForm(2, {{Int(2), Int(1)}, {Int(1), Int(2)}}),
        QuadraticForm::identity(3),
        QuadraticForm::diagonal({Int(1), Int(1), Int(2)}),
        QuadraticForm::diagonal({Int(5), Int(7), Int(11)}),
    };
    for (const auto& f : forms) {
        auto c = compute_constants(f, 128);
        // det >= 1, so v_f <= o_n
        CHECK(certified_leq(c.v_f, c.o_n) != Truth::False);
        CHECK(c.kappa_f.lower_rat() >= Rat(6));
        CHECK(c.C_f.lower_rat() >= Rat(1));
        CHECK(c.kappa_f.intersects(Enclosure::from_int(6L, 128) * c.C_f.square()));
        // relative width stays small at 128 bits
        CHECK(c.kappa_f.width() / c.kappa_f.lower_rat() < Rat(1, Int(1) << 64));
    }
}
