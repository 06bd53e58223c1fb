#include "qapprox/pipeline.hpp"

#include <algorithm>
#include <functional>
#include <optional>

namespace qapprox {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Certified: return "certified";
        case Verdict::CertifiedWeakenedConstant: return "certified-with-weakened-constant";
        default: return "failed";
    }
}
const char* to_string(CaseTaken c) {
    switch (c) {
        case CaseTaken::ShortVector: return "short-vector";
        case CaseTaken::InducedZero: return "induced-zero";
        default: return "direct-search";
    }
}
const char* to_string(KappaKind k) {
    switch (k) {
        case KappaKind::Standard: return "standard";
        case KappaKind::Effective: return "effective";
        default: return "weakened";
    }
}
const char* to_string(VerifyResult r) {
    switch (r) {
        case VerifyResult::Valid: return "valid";
        case VerifyResult::Invalid: return "invalid";
        default: return "indeterminate";
    }
}

QuadricRationalPoint QuadricRationalPoint::from_vector(IntVec g) {
    QuadricRationalPoint p;
    if (g.empty()) throw std::invalid_argument("QuadricRationalPoint: empty vector");
    if (g.back() < 0)
        for (auto& x : g) x = -x;
    // q = 0 would force f(a) = 0, hence a = 0 by positive definiteness,
    // contradicting g != 0.
    if (g.back() == 0) throw std::logic_error("QuadricRationalPoint: zero denominator");
    p.r.reserve(g.size() - 1);
    for (size_t i = 0; i + 1 < g.size(); ++i) {
        Rat ri(g[i], g.back());
        ri.canonicalize();
        p.r.push_back(ri);
    }
    p.g = std::move(g);
    return p;
}

namespace {

/// Weakening factor sqrt(2^{(n+1)^2}) covering LLL basis quality and the
/// cylinder/ball gauge gap.
Enclosure weakening_factor(int n, mpfr_prec_t prec) {
    Int p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(n + 1) * (n + 1));
    return Enclosure::from_int(p, prec).sqrt();
}

Rat abs_rat(const Rat& r) { return r < 0 ? Rat(-r) : r; }

void check_preconditions(const QuadraticForm& form, const SurfacePoint& alpha, const Rat& T,
                         const PipelineOptions& opts) {
    if (T < 1) throw std::invalid_argument("approximate: T must be >= 1");
    if (!form.is_positive_definite())
        throw std::invalid_argument("approximate: form is not positive definite");
    if (static_cast<int>(alpha.alpha.size()) != form.n)
        throw std::invalid_argument("approximate: alpha dimension mismatch");
    Rat eps = opts.epsilon_surface;
    if (alpha.exact) {
        if (abs_rat(form.evaluate(alpha.alpha_rat) - 1) > eps)
            throw std::invalid_argument("approximate: |f(alpha) - 1| exceeds epsilon_surface");
    } else {
        Enclosure bound = Enclosure::from_rat(eps, alpha.residual.precision());
        if (alpha.residual.abs().leq(bound) == Truth::False)
            throw std::invalid_argument("approximate: |f(alpha) - 1| exceeds epsilon_surface");
    }
}

void check_isotropy(const QuadraticForm& form, const PipelineOptions& opts) {
    // F is indefinite in >= 5 variables, hence isotropic (Meyer); the
    // bounded search is only needed in low dimension.
    if (form.n >= 4) return;
    IndefiniteLift lift(form);
    IntegralForm f(form.n + 1, lift.coeff_matrix());
    auto z = decide_isotropy(f, opts.zero_budget);
    if (!z) throw AnisotropicForm("F = f - y^2 is anisotropic; no rational quadric points exist");
}

struct ConstructedPoint {
    IntVec g;
    CaseTaken case_taken;
    bool weakened = false;
    std::vector<Enclosure> minima;
    IntVec zero_heights;
};

ConstructedPoint construct_point(const QuadraticForm& form, const TransformStack& stack,
                                 const PipelineOptions& opts) {
    IndefiniteLift lift(form);
    const int d = form.n + 1;
    Enclosure one = Enclosure::from_int(1L, stack.prec);

    ConstructedPoint out;
    auto short_vec = first_minimum_below_one(stack, one, opts.enum_budget);
    if (short_vec) {
        // |F(g)| < 1 certified and F(g) integral, so F(g) = 0
        if (lift.evaluate_int(*short_vec) != 0)
            throw std::logic_error("construct_point: short vector with F(g) != 0");
        out.g = *short_vec;
        out.case_taken = CaseTaken::ShortVector;
        return out;
    }

    out.case_taken = CaseTaken::InducedZero;
    std::vector<IntVec> gens;
    if (opts.lll_only) {
        ReducedBasis rb = reduce(stack);
        gens = rb.basis;
        out.minima = rb.gauge_norms;
        out.weakened = true;
    } else {
        try {
            gens = successive_minima_points(stack, d, opts.enum_budget, &out.minima);
        } catch (const EnumerationBudgetExceeded&) {
            ReducedBasis rb = reduce(stack);
            gens = rb.basis;
            out.minima = rb.gauge_norms;
            out.weakened = true;
        }
    }

    InducedForm induced = induced_form(lift, gens);
    IsotropicZero zeta = small_zero(induced.form, opts.zero_budget);
    out.zero_heights.push_back(zeta.height);

    IntVec g(d, 0);
    for (int i = 0; i < d; ++i)
        for (int l = 0; l < d; ++l) g[l] += zeta.vec[i] * gens[i][l];
    if (lift.evaluate_int(g) != 0)
        throw std::logic_error("construct_point: combined vector with F(g) != 0");
    out.g = std::move(g);
    return out;
}

/// Fills lhs and slack and decides the certified inequality: True when it
/// provably holds, False when it provably fails, Unknown to escalate.
Truth finish_certificate(ApproximationCertificate& cert, const QuadraticForm& form,
                         const SurfacePoint& alpha, mpfr_prec_t prec) {
    const Rat q(cert.point.q());
    Enclosure qT = Enclosure::from_rat(q * cert.T, prec);

    if (alpha.exact) {
        RatVec diff(form.n);
        for (int i = 0; i < form.n; ++i) diff[i] = alpha.alpha_rat[i] - cert.point.r[i];
        cert.lhs_rat = form.evaluate(diff) * q * cert.T;
        cert.lhs_exact = true;
        cert.lhs = Enclosure::from_rat(cert.lhs_rat, prec);
        cert.surface_slack = abs_rat(form.evaluate(alpha.alpha_rat) - 1) * q * cert.T;
        Rat threshold_lo = cert.kappa.lower_rat() + cert.surface_slack;
        Rat threshold_hi = cert.kappa.upper_rat() + cert.surface_slack;
        if (cert.lhs_rat <= threshold_lo) return Truth::True;
        if (cert.lhs_rat > threshold_hi) return Truth::False;
        return Truth::Unknown;  // endpoints straddle: escalate
    }

    EncVec diff(form.n, Enclosure(prec));
    for (int i = 0; i < form.n; ++i)
        diff[i] = alpha.alpha[i] - Enclosure::from_rat(cert.point.r[i], prec);
    cert.lhs = form.evaluate_enc(diff) * qT;
    cert.lhs_exact = false;
    cert.surface_slack = alpha.residual.abs().upper_rat() * q * cert.T;
    Enclosure rhs = cert.kappa + Enclosure::from_rat(cert.surface_slack, prec);
    return certified_leq(cert.lhs, rhs);
}

Enclosure diag_v_n(const TransformStack& stack, const IntVec& g) {
    EncMat rl_t = lift(enc_transpose(stack.R), stack.prec);
    EncMat wl_inv = lift(enc_transpose(stack.L), stack.prec);
    EncVec v = enc_mat_vec(rl_t, enc_mat_vec(wl_inv, enc_vec_from_int(g, stack.prec)));
    return v[stack.n - 1];
}

std::vector<Int> adjugate_diagonal(const QuadraticForm& form) {
    const int n = form.n;
    std::vector<Int> adj(n);
    for (int i = 0; i < n; ++i) {
        if (n == 1) {
            adj[i] = 1;
            continue;
        }
        IntMat minor;
        for (int r = 0; r < n; ++r) {
            if (r == i) continue;
            IntVec row;
            for (int c = 0; c < n; ++c)
                if (c != i) row.push_back(form.gram[r][c]);
            minor.push_back(std::move(row));
        }
        adj[i] = int_determinant(minor);
    }
    return adj;
}

/// Scans denominators q = 1, 2, ... <= T, enumerates all primitive integer
/// a with f(a) = q^2 (the ellipsoid confines |a_i| to an explicit box) and
/// certifies the nearest resulting quadric point. The constant kappa_f is
/// at least 6 C_f^2 while q T stays below (9/2) C_f^2 in this regime, so
/// any point with a small denominator has plenty of room.
std::optional<ApproximationCertificate> direct_denominator_search(
    const QuadraticForm& form, const SurfacePoint& a, const Rat& T, const FormConstants& consts,
    const Enclosure& t, const TransformStack& stack, mpfr_prec_t prec,
    const PipelineOptions& opts, std::string& reason) {
    const int n = form.n;
    const Int det = form.det();
    const std::vector<Int> adj = adjugate_diagonal(form);
    Int qmax;
    mpz_fdiv_q(qmax.get_mpz_t(), T.get_num_mpz_t(), T.get_den_mpz_t());

    std::uint64_t used = 0;
    bool unresolved = false;
    for (Int q = 1; q <= qmax; ++q) {
        const Int q2 = q * q;
        // f(a) = q^2 forces |a_i| <= q sqrt((gram^-1)_ii)
        std::vector<long> bound(n);
        for (int i = 0; i < n; ++i) {
            Int b2 = q2 * adj[i] / det;
            Int b;
            mpz_sqrt(b.get_mpz_t(), b2.get_mpz_t());
            b += 1;
            if (!b.fits_slong_p())
                throw SearchBudgetExceeded("direct search: coordinate box too large");
            bound[i] = b.get_si();
        }

        bool have_best = false;
        IntVec best(n);
        Rat best_err;        // exact alpha: f(q alpha - a), tie-break lexicographic
        Rat best_err_upper;  // inexact alpha: upper endpoint of f(alpha - a/q)
        IntVec cur(n);
        std::function<void(int)> descend = [&](int i) {
            if (i == n) {
                if (++used > opts.zero_budget)
                    throw SearchBudgetExceeded("direct search: budget exhausted");
                if (form.evaluate_int(cur) != q2) return;
                Int g0 = q;
                for (const auto& x : cur) g0 = gcd(g0, x);
                if (g0 > 1) return;  // covered by a smaller denominator
                if (a.exact) {
                    RatVec diff(n);
                    for (int k = 0; k < n; ++k)
                        diff[k] = Rat(q) * a.alpha_rat[k] - Rat(cur[k]);
                    Rat err = form.evaluate(diff);
                    if (!have_best || err < best_err || (err == best_err && cur < best)) {
                        best = cur;
                        best_err = err;
                        have_best = true;
                    }
                } else {
                    EncVec diff(n, Enclosure(prec));
                    for (int k = 0; k < n; ++k) {
                        Rat rk(cur[k], q);
                        rk.canonicalize();
                        diff[k] = a.alpha[k] - Enclosure::from_rat(rk, prec);
                    }
                    Rat up = form.evaluate_enc(diff).upper_rat();
                    if (!have_best || up < best_err_upper ||
                        (up == best_err_upper && cur < best)) {
                        best = cur;
                        best_err_upper = up;
                        have_best = true;
                    }
                }
                return;
            }
            for (long v = -bound[i]; v <= bound[i]; ++v) {
                cur[i] = v;
                descend(i + 1);
            }
        };
        descend(0);
        if (!have_best) continue;  // q^2 not represented by f

        IntVec g = best;
        g.push_back(q);
        ApproximationCertificate cert;
        cert.n = n;
        cert.T = T;
        cert.t_used = t;
        cert.point = QuadricRationalPoint::from_vector(std::move(g));
        cert.kappa = consts.kappa_f;
        cert.kappa_kind = KappaKind::Standard;
        cert.q_bound = T;
        cert.case_taken = CaseTaken::Direct;
        cert.surface_residual = a.residual;
        cert.precision = prec;
        cert.v_n = diag_v_n(stack, cert.point.g);
        Truth ok = finish_certificate(cert, form, a, prec);
        if (ok == Truth::True) {
            cert.verdict = Verdict::Certified;
            return cert;
        }
        if (ok == Truth::Unknown) unresolved = true;
    }
    if (unresolved) throw NeedMorePrecision("direct search: inequality comparison unresolved");
    reason = "no certifiable point with denominator at most T";
    return std::nullopt;
}

}  // namespace

ApproximationCertificate approximate(const QuadraticForm& form, const SurfacePoint& alpha,
                                     const Rat& T, const PipelineOptions& opts) {
    check_preconditions(form, alpha, T, opts);
    check_isotropy(form, opts);

    std::string last_reason = "comparison unresolved at maximum precision";
    for (mpfr_prec_t prec = opts.precision; prec <= opts.max_precision; prec *= 2) {
        try {
            FormConstants consts = compute_constants(form, prec);
            Enclosure t = Enclosure::from_rat(2 * T, prec) /
                          (Enclosure::from_int(3L, prec) * consts.C_f);
            SurfacePoint a = alpha;
            if (alpha.exact)
                a = SurfacePoint::from_rational(form, alpha.alpha_rat, prec);
            TransformStack stack = TransformStack::build(form, a, t, prec);

            // The transform construction only proves q <= T once
            // T^2 >= (9/2) C_f^2, i.e. t >= sqrt 2; below that threshold
            // the direct small-denominator search takes over.
            Enclosure threshold = Enclosure::from_rat(Rat(9, 2), prec) * consts.C_f.square();
            bool transform_regime =
                certified_leq(threshold, Enclosure::from_rat(T * T, prec)) == Truth::True;

            if (transform_regime) {
                ConstructedPoint cp = construct_point(form, stack, opts);

                ApproximationCertificate cert;
                cert.n = form.n;
                cert.T = T;
                cert.t_used = t;
                cert.point = QuadricRationalPoint::from_vector(cp.g);
                if (opts.reduce_point) {
                    Int g0 = 0;
                    for (const auto& x : cert.point.g) g0 = gcd(g0, x);
                    if (g0 > 1) {
                        IntVec gr = cert.point.g;
                        for (auto& x : gr) x /= g0;
                        cert.point = QuadricRationalPoint::from_vector(std::move(gr));
                    }
                }
                cert.kappa = consts.kappa_f;
                cert.kappa_kind = KappaKind::Standard;
                if (cp.weakened) {
                    cert.kappa = consts.kappa_f * weakening_factor(form.n, prec);
                    cert.kappa_kind = KappaKind::Weakened;
                }
                cert.q_bound = T;
                cert.case_taken = cp.case_taken;
                cert.minima = cp.minima;
                cert.zero_heights = cp.zero_heights;
                cert.surface_residual = a.residual;
                cert.precision = prec;
                cert.v_n = diag_v_n(stack, cert.point.g);

                if (Rat(cert.point.q()) <= T) {
                    Truth ok = finish_certificate(cert, form, a, prec);
                    if (ok == Truth::Unknown) continue;
                    if (ok == Truth::True) {
                        cert.verdict =
                            cp.weakened ? Verdict::CertifiedWeakenedConstant : Verdict::Certified;
                        return cert;
                    }
                    last_reason = "certified inequality does not hold";
                } else {
                    last_reason = "transform construction exceeded the denominator bound";
                }
                // fall through to the direct search
            }

            auto direct =
                direct_denominator_search(form, a, T, consts, t, stack, prec, opts, last_reason);
            if (direct) return *direct;
            break;  // the search was exhaustive; higher precision cannot help
        } catch (const NeedMorePrecision& e) {
            last_reason = e.what();
        }
    }

    ApproximationCertificate cert;
    cert.n = form.n;
    cert.T = T;
    cert.verdict = Verdict::Failed;
    cert.failure_reason = last_reason;
    cert.precision = opts.max_precision;
    return cert;
}

std::vector<ApproximationCertificate> approximate_independent(const QuadraticForm& form,
                                                              const SurfacePoint& alpha,
                                                              const Rat& T,
                                                              const PipelineOptions& opts) {
    check_preconditions(form, alpha, T, opts);
    check_isotropy(form, opts);
    IndefiniteLift lift_f(form);
    const int d = form.n + 1;

    std::string last_reason = "comparison unresolved at maximum precision";
    for (mpfr_prec_t prec = opts.precision; prec <= opts.max_precision; prec *= 2) {
        try {
            FormConstants consts = compute_constants(form, prec);
            Enclosure t = Enclosure::from_rat(2 * T, prec) /
                          (Enclosure::from_int(3L, prec) * consts.C_f);
            SurfacePoint a = alpha;
            if (alpha.exact) a = SurfacePoint::from_rational(form, alpha.alpha_rat, prec);
            TransformStack stack = TransformStack::build(form, a, t, prec);

            std::vector<Enclosure> minima;
            std::vector<IntVec> gens = successive_minima_points(stack, d, opts.enum_budget, &minima);
            InducedForm induced = induced_form(lift_f, gens);
            bool complete = false;
            std::vector<IsotropicZero> zs = independent_zeros(induced.form, d, opts.zero_budget,
                                                              &complete);
            if (!complete)
                throw SearchBudgetExceeded(
                    "approximate_independent: not enough independent zeros within budget");

            Enclosure lambda_top = minima.back();
            std::vector<ApproximationCertificate> certs;
            bool all_done = true;
            for (const auto& zeta : zs) {
                IntVec g(d, 0);
                for (int i = 0; i < d; ++i)
                    for (int l = 0; l < d; ++l) g[l] += zeta.vec[i] * gens[i][l];
                if (lift_f.evaluate_int(g) != 0)
                    throw std::logic_error("approximate_independent: F(g) != 0");

                ApproximationCertificate cert;
                cert.n = form.n;
                cert.T = T;
                cert.t_used = t;
                cert.point = QuadricRationalPoint::from_vector(std::move(g));
                // dilation actually achieved: (n+1) * height * lambda_{n+1}
                Enclosure dil = Enclosure::from_int(static_cast<long>(d), prec) *
                                Enclosure::from_int(zeta.height, prec) * lambda_top;
                cert.kappa = Enclosure::from_int(6L, prec) * dil * consts.C_f;
                cert.kappa_kind = KappaKind::Effective;
                // |q| <= dilation * max(t, 1/t) from the inverse boost
                cert.q_bound = (dil * (t + t.inv())).upper_rat();
                cert.case_taken = CaseTaken::InducedZero;
                cert.minima = minima;
                cert.zero_heights.push_back(zeta.height);
                cert.surface_residual = a.residual;
                cert.precision = prec;
                cert.v_n = diag_v_n(stack, cert.point.g);

                if (Rat(cert.point.q()) > cert.q_bound) {
                    all_done = false;
                    break;
                }
                Truth ok = finish_certificate(cert, form, a, prec);
                if (ok != Truth::True) {
                    all_done = false;
                    if (ok == Truth::False) last_reason = "certified inequality does not hold";
                    break;
                }
                cert.verdict = Verdict::Certified;
                certs.push_back(std::move(cert));
            }
            if (!all_done) continue;

            // sanity: the integer vectors are independent
            std::vector<IntVec> rows;
            for (const auto& c : certs) rows.push_back(c.point.g);
            if (int_rank(rows) != d)
                throw std::logic_error("approximate_independent: dependent output vectors");
            return certs;
        } catch (const NeedMorePrecision& e) {
            last_reason = e.what();
        }
    }
    throw SearchBudgetExceeded(last_reason);
}

VerifyResult verify_certificate(const ApproximationCertificate& cert, const QuadraticForm& form,
                                const SurfacePoint& alpha) {
    const int d = form.n + 1;
    if (cert.verdict == Verdict::Failed) return VerifyResult::Invalid;
    if (cert.n != form.n || static_cast<int>(cert.point.g.size()) != d)
        return VerifyResult::Invalid;
    if (cert.T < 1) return VerifyResult::Invalid;
    // the weakened verdict and the weakened constant come as a pair
    if ((cert.verdict == Verdict::CertifiedWeakenedConstant) !=
        (cert.kappa_kind == KappaKind::Weakened))
        return VerifyResult::Invalid;
    if (alpha.exact != cert.lhs_exact) return VerifyResult::Invalid;

    const IntVec& g = cert.point.g;
    const Int q = cert.point.q();
    if (q < 1) return VerifyResult::Invalid;

    IndefiniteLift lift_f(form);
    if (lift_f.evaluate_int(g) != 0) return VerifyResult::Invalid;

    // reduced fractions must match the raw vector
    if (static_cast<int>(cert.point.r.size()) != form.n) return VerifyResult::Invalid;
    for (int i = 0; i < form.n; ++i) {
        Rat expect(g[i], q);
        expect.canonicalize();
        if (cert.point.r[i] != expect) return VerifyResult::Invalid;
    }

    // denominator bounds
    if (cert.kappa_kind != KappaKind::Effective && cert.q_bound != cert.T)
        return VerifyResult::Invalid;
    if (Rat(q) > cert.q_bound) return VerifyResult::Invalid;

    mpfr_prec_t prec = cert.precision >= 32 ? cert.precision : 128;

    // the asserted constant must be consistent with the form
    FormConstants consts = compute_constants(form, prec);
    if (cert.kappa_kind == KappaKind::Standard) {
        if (!cert.kappa.intersects(consts.kappa_f)) return VerifyResult::Invalid;
    } else if (cert.kappa_kind == KappaKind::Weakened) {
        if (!cert.kappa.intersects(consts.kappa_f * weakening_factor(form.n, prec)))
            return VerifyResult::Invalid;
    } else {
        if (mpfr_sgn(cert.kappa.lo()) <= 0) return VerifyResult::Invalid;
    }

    // t = 2T / (3 C_f)
    Enclosure t = Enclosure::from_rat(2 * cert.T, prec) /
                  (Enclosure::from_int(3L, prec) * consts.C_f);
    if (!cert.t_used.intersects(t)) return VerifyResult::Invalid;

    // surface residual
    SurfacePoint a = alpha;
    if (alpha.exact) a = SurfacePoint::from_rational(form, alpha.alpha_rat, prec);
    if (!cert.surface_residual.intersects(a.residual)) return VerifyResult::Invalid;

    // structural case consistency
    if (cert.case_taken == CaseTaken::InducedZero) {
        if (static_cast<int>(cert.minima.size()) != d || cert.zero_heights.empty())
            return VerifyResult::Invalid;
    } else {
        if (!cert.minima.empty() || !cert.zero_heights.empty()) return VerifyResult::Invalid;
    }

    if (cert.kappa_kind == KappaKind::Effective) {
        if (cert.case_taken != CaseTaken::InducedZero) return VerifyResult::Invalid;
        // the claimed bound must match the recorded dilation diagnostics
        Enclosure dil = Enclosure::from_int(static_cast<long>(d), prec) *
                        Enclosure::from_int(cert.zero_heights.front(), prec) *
                        cert.minima.back();
        if (!cert.kappa.intersects(Enclosure::from_int(6L, prec) * dil * consts.C_f))
            return VerifyResult::Invalid;
        Enclosure qb = dil * (t + t.inv());
        if (cert.q_bound < qb.lower_rat() || cert.q_bound > qb.upper_rat())
            return VerifyResult::Invalid;
    }

    bool indeterminate = false;
    try {
        TransformStack stack = TransformStack::build(form, a, t, prec);
        if (cert.case_taken == CaseTaken::ShortVector) {
            switch (body_membership(g, stack, Enclosure::from_int(1L, prec))) {
                case Membership::Outside: return VerifyResult::Invalid;
                case Membership::Unknown: indeterminate = true; break;
                case Membership::Inside: break;
            }
        }
        Enclosure v_n = diag_v_n(stack, g);
        if (!cert.v_n.intersects(v_n)) return VerifyResult::Invalid;
    } catch (const NeedMorePrecision&) {
        indeterminate = true;
    }

    // the inequality and the stored left-hand side
    if (alpha.exact) {
        RatVec diff(form.n);
        for (int i = 0; i < form.n; ++i) diff[i] = alpha.alpha_rat[i] - cert.point.r[i];
        Rat err = form.evaluate(diff);
        Rat lhs = err * Rat(q) * cert.T;
        if (cert.lhs_exact && cert.lhs_rat != lhs) return VerifyResult::Invalid;
        if (!cert.lhs.contains(lhs)) return VerifyResult::Invalid;
        Rat slack = abs_rat(form.evaluate(alpha.alpha_rat) - 1) * Rat(q) * cert.T;
        if (cert.surface_slack != slack) return VerifyResult::Invalid;

        // identity f(alpha - r) q^2 = F(g - q lift(alpha))
        RatVec z(d);
        for (int i = 0; i < form.n; ++i) z[i] = Rat(g[i]) - Rat(q) * alpha.alpha_rat[i];
        z[form.n] = Rat(g[form.n]) - Rat(q);
        if (lift_f.evaluate(z) != err * Rat(q) * Rat(q)) return VerifyResult::Invalid;

        if (lhs > cert.kappa.upper_rat() + slack) return VerifyResult::Invalid;
        if (lhs > cert.kappa.lower_rat() + slack) indeterminate = true;
    } else {
        EncVec diff(form.n, Enclosure(prec));
        for (int i = 0; i < form.n; ++i)
            diff[i] = a.alpha[i] - Enclosure::from_rat(cert.point.r[i], prec);
        Enclosure err = form.evaluate_enc(diff);
        Enclosure lhs = err * Enclosure::from_rat(Rat(q) * cert.T, prec);
        if (!cert.lhs.intersects(lhs)) return VerifyResult::Invalid;
        Enclosure rhs = cert.kappa + Enclosure::from_rat(cert.surface_slack, prec);
        switch (certified_leq(lhs, rhs)) {
            case Truth::False: return VerifyResult::Invalid;
            case Truth::Unknown: indeterminate = true; break;
            case Truth::True: break;
        }
    }

    return indeterminate ? VerifyResult::Indeterminate : VerifyResult::Valid;
}

}  // namespace qapprox
