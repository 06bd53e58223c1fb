#include <doctest.h>

#include <random>

#include "qapprox/transforms.hpp"

using namespace qapprox;

namespace {

bool entrywise_intersects(const EncMat& a, const EncMat& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j)
            if (!a[i][j].intersects(b[i][j])) return false;
    return true;
}

// max |entry| of W^T gram W - I
Enclosure residual_from(const QuadraticForm& form, const EncMat& W) {
    mpfr_prec_t prec = W[0][0].precision();
    int n = form.n;
    EncMat gw(n, EncVec(n, Enclosure(prec)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Enclosure acc = Enclosure::from_int(0L, prec);
            for (int k = 0; k < n; ++k)
                acc = acc + Enclosure::from_int(form.gram[i][k], prec) * W[k][j];
            gw[i][j] = acc;
        }
    EncMat wtgw = enc_mat_mul(enc_transpose(W), gw);
    return enc_residual_from_identity(wtgw);
}

}  // namespace

TEST_CASE("cholesky_W diagonal cases") {
    auto d12 = QuadraticForm::diagonal({Int(1), Int(2)});
    EncMat W = cholesky_W(d12, 128);
    CHECK(W[0][0].contains(Rat(1)));
    CHECK(W[0][1].contains(Rat(0)));
    // W_11 = 1/sqrt(2)
    CHECK(W[1][1].square().contains(Rat(1, 2)));

    auto I3 = QuadraticForm::identity(3);
    EncMat WI = cholesky_W(I3, 128);
    CHECK(enc_residual_from_identity(WI).contains_zero());
}

TEST_CASE("cholesky_W defining identity on a dense form") {
    QuadraticForm f(2, {{Int(2), Int(1)}, {Int(1), Int(2)}});
    EncMat W = cholesky_W(f, 128);
    Enclosure res = residual_from(f, W);
    CHECK(res.contains_zero());
    CHECK(res.upper_rat() < Rat(1, Int(1) << 64));
}

TEST_CASE("rotation_to special and generic directions") {
    mpfr_prec_t prec = 128;
    // beta = e -> identity
    EncVec e = {Enclosure::from_int(0L, prec), Enclosure::from_int(1L, prec)};
    EncMat R = rotation_to(e, prec);
    CHECK(R[0][0].contains(Rat(1)));
    CHECK(R[0][1].contains(Rat(0)));
    CHECK(R[1][1].contains(Rat(1)));

    // beta = (1, 0) -> swap
    EncVec b10 = {Enclosure::from_int(1L, prec), Enclosure::from_int(0L, prec)};
    EncMat S = rotation_to(b10, prec);
    EncVec Se = enc_mat_vec(S, e);
    CHECK(Se[0].contains(Rat(1)));
    CHECK(Se[1].contains(Rat(0)));
    CHECK(enc_residual_from_identity(enc_mat_mul(enc_transpose(S), S)).contains_zero());

    // beta = (1,1,1)/sqrt(3)
    Enclosure inv_s3 = Enclosure::from_int(3L, prec).sqrt().inv();
    EncVec b3(3, inv_s3);
    EncMat R3 = rotation_to(b3, prec);
    CHECK(enc_residual_from_identity(enc_mat_mul(enc_transpose(R3), R3)).contains_zero());
    EncVec e3 = {Enclosure::from_int(0L, prec), Enclosure::from_int(0L, prec),
                 Enclosure::from_int(1L, prec)};
    EncVec R3e = enc_mat_vec(R3, e3);
    for (int i = 0; i < 3; ++i) CHECK(R3e[i].intersects(b3[i]));

    // near-antipodal direction is handled without blow-up
    EncVec bneg = {Enclosure::from_int(0L, prec), Enclosure::from_int(-1L, prec)};
    EncMat Rn = rotation_to(bneg, prec);
    EncVec Rne = enc_mat_vec(Rn, e);
    CHECK(Rne[0].contains(Rat(0)));
    CHECK(Rne[1].contains(Rat(-1)));
    CHECK(enc_residual_from_identity(enc_mat_mul(enc_transpose(Rn), Rn)).contains_zero());
}

TEST_CASE("boost entries and factorization") {
    mpfr_prec_t prec = 128;
    EncMat G1 = boost(Enclosure::from_int(1L, prec), 2);
    CHECK(enc_residual_from_identity(G1).contains_zero());

    EncMat G2 = boost(Enclosure::from_int(2L, prec), 2);
    CHECK(G2[1][1].contains(Rat(5, 4)));
    CHECK(G2[1][2].contains(Rat(3, 4)));
    CHECK(G2[2][1].contains(Rat(3, 4)));
    CHECK(G2[2][2].contains(Rat(5, 4)));
    CHECK(G2[0][0].contains(Rat(1)));
    CHECK(G2[0][1].contains(Rat(0)));

    CHECK(entrywise_intersects(G2, boost_via_factorization(Enclosure::from_int(2L, prec), 2)));
    CHECK_THROWS_AS(boost(Enclosure::from_int(0L, prec), 2), std::domain_error);
}

TEST_CASE("boost preserves F0 and satisfies the group law") {
    mpfr_prec_t prec = 128;
    IndefiniteLift F0(QuadraticForm::identity(2));
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> zc(-5, 5);
    std::uniform_int_distribution<int> tn(1, 40);
    for (int it = 0; it < 50; ++it) {
        Rat tr(tn(rng), tn(rng));
        Enclosure t = Enclosure::from_rat(tr, prec);
        EncMat G = boost(t, 2);
        IntVec z{Int(zc(rng)), Int(zc(rng)), Int(zc(rng))};
        EncVec Gz = enc_mat_vec(G, enc_vec_from_int(z, prec));
        // F0(G_t z) = F0(z)
        Enclosure val = Gz[0].square() + Gz[1].square() - Gz[2].square();
        CHECK(val.contains(Rat(F0.evaluate_int(z))));

        Rat sr(tn(rng), tn(rng));
        Enclosure s = Enclosure::from_rat(sr, prec);
        EncMat Gs = enc_mat_mul(G, boost(s, 2));
        EncMat Gts = boost(Enclosure::from_rat(Rat(tr * sr), prec), 2);
        CHECK(entrywise_intersects(Gs, Gts));
    }
}

TEST_CASE("surface points") {
    auto I2 = QuadraticForm::identity(2);
    SurfacePoint sp = SurfacePoint::from_rational(I2, {Rat(3, 5), Rat(4, 5)}, 128);
    CHECK(sp.exact);
    CHECK(sp.residual.contains(Rat(0)));

    EncVec a = {Enclosure::from_int(2L, 128).sqrt().inv(),
                Enclosure::from_int(2L, 128).sqrt().inv()};
    SurfacePoint sq = SurfacePoint::from_enclosures(I2, a);
    CHECK_FALSE(sq.exact);
    CHECK(sq.residual.contains_zero());
}

TEST_CASE("transform stack invariants") {
    auto forms = std::vector<QuadraticForm>{
        QuadraticForm::identity(2),
        QuadraticForm::diagonal({Int(1), Int(2)}),
        QuadraticForm::identity(3),
    };
    std::vector<RatVec> alphas = {
        {Rat(3, 5), Rat(4, 5)},
        {Rat(1, 3), Rat(2, 3)},
        {Rat(2, 7), Rat(3, 7), Rat(6, 7)},
    };
    mpfr_prec_t prec = 128;
    std::vector<Rat> ts = {Rat(1), Rat(2), Rat(1, 3), Rat(7, 2)};
    for (size_t i = 0; i < forms.size(); ++i) {
        const auto& f = forms[i];
        SurfacePoint sp = SurfacePoint::from_rational(f, alphas[i], prec);
        for (const Rat& tr : ts) {
            Enclosure t = Enclosure::from_rat(tr, prec);
            TransformStack st = TransformStack::build(f, sp, t, prec);
            int d = f.n + 1;

            // M M^{-1} ~ I
            CHECK(enc_residual_from_identity(enc_mat_mul(st.M, st.M_inv)).contains_zero());

            // automorphism chain: F(M z) = F0(z) on random integer z
            IndefiniteLift F(f);
            std::mt19937 rng(17 + static_cast<unsigned>(i));
            std::uniform_int_distribution<int> zc(-4, 4);
            for (int rep = 0; rep < 20; ++rep) {
                IntVec z(d);
                for (auto& x : z) x = zc(rng);
                EncVec Mz = enc_mat_vec(st.M, enc_vec_from_int(z, prec));
                Enclosure val = Enclosure::from_int(0L, prec);
                for (int r = 0; r < f.n; ++r)
                    for (int c = 0; c < f.n; ++c)
                        val = val + Enclosure::from_int(f.gram[r][c], prec) * Mz[r] * Mz[c];
                val = val - Mz[f.n].square();
                Int F0z(0);
                for (int k = 0; k < f.n; ++k) F0z += z[k] * z[k];
                F0z -= z[f.n] * z[f.n];
                CHECK(val.contains(Rat(F0z)));
            }

            // volume: |det M| 2 o_n = 2 v_f, i.e. |det M| = 1/sqrt(det gram)
            Enclosure dm = enc_det(st.M).abs();
            CHECK(dm.square().intersects(
                Enclosure::from_int(f.det(), prec).inv()));

            // commutation identities: alpha-bar = lift(W) beta-bar,
            // beta-bar = lift(R) e-bar, t beta-bar = lift(R) G_t e-bar
            EncVec ebar(d, Enclosure::from_int(0L, prec));
            ebar[f.n - 1] = Enclosure::from_int(1L, prec);
            ebar[f.n] = Enclosure::from_int(1L, prec);
            EncVec betabar = st.beta;
            betabar.push_back(Enclosure::from_int(1L, prec));
            EncVec alphabar = enc_vec_from_rat(alphas[i], prec);
            alphabar.push_back(Enclosure::from_int(1L, prec));

            EncMat Wl = lift(st.W, prec);
            EncMat Rl = lift(st.R, prec);
            EncVec lhs1 = enc_mat_vec(Wl, betabar);
            for (int k = 0; k < d; ++k) CHECK(lhs1[k].intersects(alphabar[k]));
            EncVec lhs2 = enc_mat_vec(Rl, ebar);
            for (int k = 0; k < d; ++k) CHECK(lhs2[k].intersects(betabar[k]));
            EncVec lhs3 = enc_mat_vec(Rl, enc_mat_vec(st.G, ebar));
            for (int k = 0; k < d; ++k) CHECK(lhs3[k].intersects(t * betabar[k]));
        }
    }
}

TEST_CASE("body membership on the identity stack") {
    auto I2 = QuadraticForm::identity(2);
    // alpha = (0, 1) gives beta = e, so W = R = I; t = 1 gives G = I
    SurfacePoint sp = SurfacePoint::from_rational(I2, {Rat(0), Rat(1)}, 128);
    TransformStack st = TransformStack::build(I2, sp, Enclosure::from_int(1L, 128), 128);
    Enclosure one = Enclosure::from_int(1L, 128);
    Enclosure two = Enclosure::from_int(2L, 128);

    CHECK(body_membership({Int(0), Int(0), Int(0)}, st, one) == Membership::Inside);
    CHECK(body_membership({Int(0), Int(0), Int(2)}, st, one) == Membership::Outside);
    // unit vector sits on the boundary of the open cylinder
    CHECK(body_membership({Int(1), Int(0), Int(0)}, st, one) != Membership::Inside);
    CHECK(body_membership({Int(1), Int(0), Int(0)}, st, two) == Membership::Inside);

    CHECK(st.gauge({Int(1), Int(0), Int(0)}).contains(Rat(1)));
    CHECK(st.gauge({Int(3), Int(4), Int(2)}).contains(Rat(5)));
}
