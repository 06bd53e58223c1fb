#include <doctest.h>

#include <algorithm>

#include "qapprox/lattice.hpp"

using namespace qapprox;

namespace {

TransformStack identity_stack(int n, mpfr_prec_t prec = 128) {
    auto f = QuadraticForm::identity(n);
    RatVec a(n, Rat(0));
    a[n - 1] = Rat(1);
    SurfacePoint sp = SurfacePoint::from_rational(f, a, prec);
    return TransformStack::build(f, sp, Enclosure::from_int(1L, prec), prec);
}

bool is_unit_vector(const IntVec& v) {
    int nonzero = 0;
    for (const auto& x : v) {
        if (x == 1 || x == -1) ++nonzero;
        else if (x != 0) return false;
    }
    return nonzero == 1;
}

}  // namespace

TEST_CASE("reduction of the identity stack") {
    TransformStack st = identity_stack(2);
    ReducedBasis rb = reduce(st);
    REQUIRE(rb.basis.size() == 3);
    IntMat rows = rb.basis;
    CHECK(abs(int_determinant(rows)) == 1);
    for (const auto& g : rb.gauge_norms) CHECK(g.contains(Rat(1)));
    for (const auto& b : rb.basis) CHECK(is_unit_vector(b));
}

TEST_CASE("reduction keeps the basis unimodular on skewed stacks") {
    auto f = QuadraticForm::diagonal({Int(1), Int(2)});
    SurfacePoint sp = SurfacePoint::from_rational(f, {Rat(1, 3), Rat(2, 3)}, 128);
    for (Rat tr : {Rat(5), Rat(1, 5), Rat(17, 3)}) {
        TransformStack st = TransformStack::build(f, sp, Enclosure::from_rat(tr, 128), 128);
        ReducedBasis rb = reduce(st);
        CHECK(abs(int_determinant(rb.basis)) == 1);
        // gauges sorted ascending
        for (size_t i = 1; i < rb.gauge_norms.size(); ++i)
            CHECK(rb.gauge_norms[i - 1].lower_rat() <= rb.gauge_norms[i].upper_rat());
    }
}

TEST_CASE("successive minima of the identity stack") {
    TransformStack st = identity_stack(2);
    std::vector<Enclosure> gauges;
    auto pts = successive_minima_points(st, 3, 1'000'000, &gauges);
    REQUIRE(pts.size() == 3);
    REQUIRE(gauges.size() == 3);
    // all three minima equal 1 (ties may pick non-axis vectors such as
    // (0,1,1), which has the same cylinder gauge as a unit vector)
    for (const auto& g : gauges) CHECK(g.contains(Rat(1)));
    for (const auto& p : pts)
        for (const auto& x : p) CHECK(abs(x) <= 1);
    CHECK(int_rank(pts) == 3);
}

TEST_CASE("minima agree with exhaustive enumeration") {
    auto f = QuadraticForm::diagonal({Int(1), Int(2)});
    SurfacePoint sp = SurfacePoint::from_rational(f, {Rat(1, 3), Rat(2, 3)}, 128);
    for (Rat tr : {Rat(2), Rat(3), Rat(1, 2)}) {
        TransformStack st = TransformStack::build(f, sp, Enclosure::from_rat(tr, 128), 128);
        std::vector<Enclosure> gauges;
        auto pts = successive_minima_points(st, 3, 10'000'000, &gauges);
        REQUIRE(pts.size() == 3);
        CHECK(int_rank(pts) == 3);

        // oracle: every integer vector in a generous ellipsoid has gauge
        // >= lambda_1
        double radius = 3.0;
        auto all = enumerate_ellipsoid(st, radius, 10'000'000);
        Rat best_upper = gauges[0].upper_rat();
        for (const auto& v : all) {
            Enclosure g = st.gauge(v);
            CHECK(g.upper_rat() >= gauges[0].lower_rat());
        }
        // and lambda_1 is actually achieved by some enumerated vector
        bool achieved = false;
        for (const auto& v : all)
            if (st.gauge(v).lower_rat() <= best_upper) achieved = true;
        CHECK(achieved);
    }
}

TEST_CASE("first minimum below one") {
    TransformStack st = identity_stack(2);
    Enclosure one = Enclosure::from_int(1L, 128);
    // the open unit cylinder contains no nonzero integer point
    CHECK_FALSE(first_minimum_below_one(st, one, 1'000'000).has_value());

    // dilation 3 admits the unit vectors
    Enclosure three = Enclosure::from_int(3L, 128);
    auto g = first_minimum_below_one(st, three, 1'000'000);
    REQUIRE(g.has_value());
    CHECK(is_unit_vector(*g));

    // a boosted stack around a rational quadric point picks up an
    // isotropic vector: F_0(g) = 0 exactly
    auto I2 = QuadraticForm::identity(2);
    SurfacePoint sp = SurfacePoint::from_rational(I2, {Rat(3, 5), Rat(4, 5)}, 128);
    TransformStack boosted = TransformStack::build(I2, sp, Enclosure::from_int(20L, 128), 128);
    auto w = first_minimum_below_one(boosted, one, 10'000'000);
    REQUIRE(w.has_value());
    IndefiniteLift F0(I2);
    CHECK(F0.evaluate_int(*w) == 0);
    CHECK(std::any_of(w->begin(), w->end(), [](const Int& x) { return x != 0; }));
}

TEST_CASE("enumeration respects its budget") {
    auto I3 = QuadraticForm::identity(3);
    RatVec a = {Rat(0), Rat(0), Rat(1)};
    SurfacePoint sp = SurfacePoint::from_rational(I3, a, 128);
    TransformStack st = TransformStack::build(I3, sp, Enclosure::from_int(1L, 128), 128);
    CHECK_THROWS_AS(enumerate_ellipsoid(st, 50.0, 10), EnumerationBudgetExceeded);
}

TEST_CASE("minkowski product bound on sample stacks") {
    // lambda_1 ... lambda_{n+1} <= 2^n / v_f
    std::vector<QuadraticForm> forms = {QuadraticForm::identity(2),
                                        QuadraticForm::diagonal({Int(1), Int(2)})};
    std::vector<RatVec> alphas = {{Rat(3, 5), Rat(4, 5)}, {Rat(1, 3), Rat(2, 3)}};
    for (size_t i = 0; i < forms.size(); ++i) {
        auto consts = compute_constants(forms[i], 128);
        SurfacePoint sp = SurfacePoint::from_rational(forms[i], alphas[i], 128);
        for (Rat tr : {Rat(1), Rat(3), Rat(2, 5)}) {
            TransformStack st =
                TransformStack::build(forms[i], sp, Enclosure::from_rat(tr, 128), 128);
            std::vector<Enclosure> gauges;
            successive_minima_points(st, forms[i].n + 1, 10'000'000, &gauges);
            Enclosure prod = Enclosure::from_int(1L, 128);
            for (const auto& g : gauges) prod = prod * g;
            Enclosure bound =
                Enclosure::from_int(Int(Int(1) << forms[i].n), 128) / consts.v_f;
            CHECK(certified_leq(prod, bound) == Truth::True);
        }
    }
}
