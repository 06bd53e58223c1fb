#include "qapprox/transforms.hpp"

#include <stdexcept>

namespace qapprox {

EncMat enc_identity(int n, mpfr_prec_t prec) {
    EncMat m(n, EncVec(n, Enclosure::from_int(0L, prec)));
    for (int i = 0; i < n; ++i) m[i][i] = Enclosure::from_int(1L, prec);
    return m;
}

EncMat enc_mat_mul(const EncMat& a, const EncMat& b) {
    const size_t r = a.size(), k = b.size(), c = b[0].size();
    if (a[0].size() != k) throw std::invalid_argument("enc_mat_mul: shape mismatch");
    mpfr_prec_t prec = a[0][0].precision();
    EncMat out(r, EncVec(c, Enclosure::from_int(0L, prec)));
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j) {
            Enclosure acc = Enclosure::from_int(0L, prec);
            for (size_t l = 0; l < k; ++l) acc = acc + a[i][l] * b[l][j];
            out[i][j] = acc;
        }
    return out;
}

EncVec enc_mat_vec(const EncMat& a, const EncVec& v) {
    if (a[0].size() != v.size()) throw std::invalid_argument("enc_mat_vec: shape mismatch");
    mpfr_prec_t prec = v[0].precision();
    EncVec out(a.size(), Enclosure::from_int(0L, prec));
    for (size_t i = 0; i < a.size(); ++i) {
        Enclosure acc = Enclosure::from_int(0L, prec);
        for (size_t j = 0; j < v.size(); ++j) acc = acc + a[i][j] * v[j];
        out[i] = acc;
    }
    return out;
}

EncVec enc_vec_from_int(const IntVec& v, mpfr_prec_t prec) {
    EncVec out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(Enclosure::from_int(x, prec));
    return out;
}

EncVec enc_vec_from_rat(const RatVec& v, mpfr_prec_t prec) {
    EncVec out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(Enclosure::from_rat(x, prec));
    return out;
}

EncMat enc_transpose(const EncMat& a) {
    const size_t r = a.size(), c = a[0].size();
    EncMat out(c, EncVec(r, a[0][0]));
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j) out[j][i] = a[i][j];
    return out;
}

Enclosure enc_residual_from_identity(const EncMat& a) {
    mpfr_prec_t prec = a[0][0].precision();
    Enclosure worst = Enclosure::from_int(0L, prec);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j) {
            Enclosure d = a[i][j] - Enclosure::from_int(i == j ? 1L : 0L, prec);
            worst = Enclosure::max(worst, d.abs());
        }
    return worst;
}

Enclosure enc_det(EncMat a) {
    const size_t n = a.size();
    mpfr_prec_t prec = a[0][0].precision();
    Enclosure det = Enclosure::from_int(1L, prec);
    // Gaussian elimination with enclosure pivots; pivots that cannot be
    // certified nonzero raise for escalation.
    for (size_t k = 0; k < n; ++k) {
        size_t piv = k;
        while (piv < n && a[piv][k].contains_zero()) ++piv;
        if (piv == n) {
            if (a[k][k].is_point() && a[k][k].contains_zero()) return Enclosure::from_int(0L, prec);
            throw NeedMorePrecision("enc_det: pivot not certified nonzero");
        }
        if (piv != k) {
            std::swap(a[piv], a[k]);
            det = -det;
        }
        det = det * a[k][k];
        for (size_t i = k + 1; i < n; ++i) {
            Enclosure factor = a[i][k] / a[k][k];
            for (size_t j = k; j < n; ++j) a[i][j] = a[i][j] - factor * a[k][j];
        }
    }
    return det;
}

EncMat cholesky_lower(const QuadraticForm& form, mpfr_prec_t prec) {
    const int n = form.n;
    EncMat l(n, EncVec(n, Enclosure::from_int(0L, prec)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            Enclosure s = Enclosure::from_int(form.gram[i][j], prec);
            for (int k = 0; k < j; ++k) s = s - l[i][k] * l[j][k];
            if (i == j) {
                if (s.leq(Enclosure::from_int(0L, prec)) != Truth::False)
                    throw NeedMorePrecision("cholesky_lower: pivot not certified positive");
                l[i][j] = s.sqrt();
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    return l;
}

EncMat upper_triangular_inverse(const EncMat& u) {
    const int n = static_cast<int>(u.size());
    mpfr_prec_t prec = u[0][0].precision();
    EncMat inv(n, EncVec(n, Enclosure::from_int(0L, prec)));
    for (int j = n - 1; j >= 0; --j) {
        if (u[j][j].contains_zero())
            throw NeedMorePrecision("upper_triangular_inverse: diagonal not certified nonzero");
        inv[j][j] = u[j][j].inv();
        for (int i = j - 1; i >= 0; --i) {
            Enclosure s = Enclosure::from_int(0L, prec);
            for (int k = i + 1; k <= j; ++k) s = s + u[i][k] * inv[k][j];
            inv[i][j] = -(s / u[i][i]);
        }
    }
    return inv;
}

EncMat cholesky_W(const QuadraticForm& form, mpfr_prec_t prec) {
    return upper_triangular_inverse(enc_transpose(cholesky_lower(form, prec)));
}

EncMat rotation_to(const EncVec& beta, mpfr_prec_t prec) {
    const int n = static_cast<int>(beta.size());
    auto householder = [&](const EncVec& u) {
        Enclosure s = Enclosure::from_int(0L, prec);
        for (const auto& ui : u) s = s + ui.square();
        if (s.contains_zero()) throw NeedMorePrecision("rotation_to: reflection vector near zero");
        EncMat h = enc_identity(n, prec);
        Enclosure two = Enclosure::from_int(2L, prec);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) h[i][j] = h[i][j] - two * u[i] * u[j] / s;
        return h;
    };

    // u = e - beta; its squared norm is ~2(1 - beta_n), degenerate only
    // near beta = e.
    EncVec u(n, Enclosure::from_int(0L, prec));
    for (int i = 0; i < n; ++i) u[i] = -beta[i];
    u[n - 1] = u[n - 1] + Enclosure::from_int(1L, prec);

    Enclosure s = Enclosure::from_int(0L, prec);
    for (const auto& ui : u) s = s + ui.square();
    Rat quarter(1, 4);
    if (s.geq_rat(quarter) == Truth::True) return householder(u);

    // beta is close to e: exact-identity case, else compose the reflection
    // through the hyperplane orthogonal to e with a Householder step on
    // -e - beta (well-conditioned there).
    bool exactly_e = true;
    for (int i = 0; i < n; ++i) {
        Rat target(i == n - 1 ? 1 : 0);
        if (!(beta[i].is_point() && beta[i].contains(target))) {
            exactly_e = false;
            break;
        }
    }
    if (exactly_e) return enc_identity(n, prec);

    EncVec u2(n, Enclosure::from_int(0L, prec));
    for (int i = 0; i < n; ++i) u2[i] = -beta[i];
    u2[n - 1] = u2[n - 1] - Enclosure::from_int(1L, prec);
    EncMat h2 = householder(u2);  // maps -e to beta
    EncMat flip = enc_identity(n, prec);
    flip[n - 1][n - 1] = Enclosure::from_int(-1L, prec);  // e -> -e
    return enc_mat_mul(h2, flip);
}

EncMat boost(const Enclosure& t, int n) {
    mpfr_prec_t prec = t.precision();
    if (t.contains_zero()) throw std::domain_error("boost: t encloses 0");
    Enclosure half = Enclosure::from_rat(Rat(1, 2), prec);
    Enclosure tinv = t.inv();
    Enclosure c = half * (t + tinv);
    Enclosure s = half * (t - tinv);
    EncMat g = enc_identity(n + 1, prec);
    g[n - 1][n - 1] = c;
    g[n - 1][n] = s;
    g[n][n - 1] = s;
    g[n][n] = c;
    return g;
}

EncMat boost_basis_matrix(int n, mpfr_prec_t prec) {
    EncMat b = enc_identity(n + 1, prec);
    b[n - 1][n - 1] = Enclosure::from_int(1L, prec);
    b[n - 1][n] = Enclosure::from_int(-1L, prec);
    b[n][n - 1] = Enclosure::from_int(1L, prec);
    b[n][n] = Enclosure::from_int(1L, prec);
    return b;
}

EncMat boost_via_factorization(const Enclosure& t, int n) {
    mpfr_prec_t prec = t.precision();
    if (t.contains_zero()) throw std::domain_error("boost_via_factorization: t encloses 0");
    EncMat b = boost_basis_matrix(n, prec);
    // B^{-1} = [[1/2, 1/2], [-1/2, 1/2]] on the last two coordinates.
    EncMat binv = enc_identity(n + 1, prec);
    Enclosure half = Enclosure::from_rat(Rat(1, 2), prec);
    binv[n - 1][n - 1] = half;
    binv[n - 1][n] = half;
    binv[n][n - 1] = -half;
    binv[n][n] = half;
    EncMat d = enc_identity(n + 1, prec);
    d[n - 1][n - 1] = t.inv();
    d[n][n] = t;
    return enc_mat_mul(binv, enc_mat_mul(d, b));
}

EncMat lift(const EncMat& a, mpfr_prec_t prec) {
    const int n = static_cast<int>(a.size());
    EncMat out = enc_identity(n + 1, prec);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[i][j] = a[i][j];
    return out;
}

SurfacePoint SurfacePoint::from_rational(const QuadraticForm& form, RatVec a, mpfr_prec_t prec) {
    if (static_cast<int>(a.size()) != form.n)
        throw std::invalid_argument("SurfacePoint: dimension mismatch");
    SurfacePoint p;
    p.exact = true;
    p.alpha = enc_vec_from_rat(a, prec);
    Rat res = form.evaluate(a) - 1;
    p.residual = Enclosure::from_rat(res, prec);
    p.alpha_rat = std::move(a);
    return p;
}

SurfacePoint SurfacePoint::from_enclosures(const QuadraticForm& form, EncVec a) {
    if (static_cast<int>(a.size()) != form.n)
        throw std::invalid_argument("SurfacePoint: dimension mismatch");
    SurfacePoint p;
    p.exact = false;
    mpfr_prec_t prec = a[0].precision();
    p.residual = form.evaluate_enc(a) - Enclosure::from_int(1L, prec);
    p.alpha = std::move(a);
    return p;
}

TransformStack TransformStack::build(const QuadraticForm& form, const SurfacePoint& alpha,
                                     const Enclosure& t, mpfr_prec_t prec) {
    TransformStack s;
    s.n = form.n;
    s.prec = prec;
    s.L = cholesky_lower(form, prec);
    s.W = upper_triangular_inverse(enc_transpose(s.L));
    // beta = W^{-1} alpha = L^T alpha
    s.beta = enc_mat_vec(enc_transpose(s.L), alpha.alpha);
    s.R = rotation_to(s.beta, prec);
    s.t = t;
    s.G = boost(t, s.n);
    EncMat wl = lift(s.W, prec);
    EncMat rl = lift(s.R, prec);
    s.M = enc_mat_mul(wl, enc_mat_mul(rl, s.G));
    EncMat g_inv = boost(t.inv(), s.n);
    EncMat rl_t = lift(enc_transpose(s.R), prec);
    EncMat wl_inv = lift(enc_transpose(s.L), prec);
    s.M_inv = enc_mat_mul(g_inv, enc_mat_mul(rl_t, wl_inv));
    return s;
}

EncVec TransformStack::apply_inverse(const IntVec& g) const {
    return enc_mat_vec(M_inv, enc_vec_from_int(g, prec));
}

Enclosure TransformStack::gauge(const IntVec& g) const {
    EncVec z = apply_inverse(g);
    Enclosure xs = Enclosure::from_int(0L, prec);
    for (int i = 0; i < n; ++i) xs = xs + z[i].square();
    return Enclosure::max(xs.sqrt(), z[n].abs());
}

Membership body_membership(const IntVec& g, const TransformStack& stack,
                           const Enclosure& dilation) {
    Truth inside = stack.gauge(g).less(dilation);
    switch (inside) {
        case Truth::True: return Membership::Inside;
        case Truth::False: return Membership::Outside;
        default: return Membership::Unknown;
    }
}

}  // namespace qapprox
