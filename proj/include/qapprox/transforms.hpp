#pragma once

#include <optional>

#include "qapprox/forms.hpp"

namespace qapprox {

using EncVec = std::vector<Enclosure>;
using EncMat = std::vector<std::vector<Enclosure>>;

// Enclosure matrix helpers.
EncMat enc_identity(int n, mpfr_prec_t prec);
EncMat enc_mat_mul(const EncMat& a, const EncMat& b);
EncVec enc_mat_vec(const EncMat& a, const EncVec& v);
EncVec enc_vec_from_int(const IntVec& v, mpfr_prec_t prec);
EncVec enc_vec_from_rat(const RatVec& v, mpfr_prec_t prec);
EncMat enc_transpose(const EncMat& a);
/// Max |entry| upper bound of (a - identity), for residual checks.
Enclosure enc_residual_from_identity(const EncMat& a);
Enclosure enc_det(EncMat a);

/// Lower-triangular L with gram = L L^T, entries as enclosures.
/// Throws NeedMorePrecision if a pivot cannot be certified positive.
EncMat cholesky_lower(const QuadraticForm& form, mpfr_prec_t prec);
/// W = L^{-T}: upper triangular with W^T gram W = I (enclosed).
EncMat cholesky_W(const QuadraticForm& form, mpfr_prec_t prec);
EncMat upper_triangular_inverse(const EncMat& u);

/// Orthogonal R with R e_n = beta for a (near-)unit vector beta.
/// Householder reflection on e - beta, with a composed fallback when
/// beta is close to e.
EncMat rotation_to(const EncVec& beta, mpfr_prec_t prec);

/// The (n+1)x(n+1) hyperbolic automorphism of F_0: identity on the first
/// n-1 coordinates and [[(t+1/t)/2, (t-1/t)/2], [(t-1/t)/2, (t+1/t)/2]]
/// on the last two. Throws std::domain_error when t encloses 0.
EncMat boost(const Enclosure& t, int n);
/// Change-of-basis matrix with F_0(z) = F_1(B z); boost == B^{-1} D_t B.
EncMat boost_basis_matrix(int n, mpfr_prec_t prec);
EncMat boost_via_factorization(const Enclosure& t, int n);

/// Point alpha with f(alpha) = 1 (up to a certified residual).
struct SurfacePoint {
    RatVec alpha_rat;  ///< set when alpha is exactly rational
    EncVec alpha;      ///< always set
    bool exact = false;
    Enclosure residual;  ///< encloses f(alpha) - 1

    static SurfacePoint from_rational(const QuadraticForm& form, RatVec a, mpfr_prec_t prec);
    static SurfacePoint from_enclosures(const QuadraticForm& form, EncVec a);
};

/// The composed geometry: M = lift(W) lift(R) G_t together with its
/// certified inverse M^{-1} = G_{1/t} lift(R^T) lift(L^T). Immutable
/// after construction.
struct TransformStack {
    int n = 0;
    mpfr_prec_t prec = 0;
    EncMat W;  // n x n, upper triangular
    EncMat L;  // n x n, lower triangular, W = L^{-T}
    EncVec beta;
    EncMat R;  // n x n orthogonal
    Enclosure t;
    EncMat G;      // (n+1) x (n+1)
    EncMat M;      // (n+1) x (n+1)
    EncMat M_inv;  // (n+1) x (n+1)

    static TransformStack build(const QuadraticForm& form, const SurfacePoint& alpha,
                                const Enclosure& t, mpfr_prec_t prec);

    EncVec apply_inverse(const IntVec& g) const;
    /// Cylinder gauge of g: max(|y|, ||x||_2) of M^{-1} g.
    Enclosure gauge(const IntVec& g) const;
};

enum class Membership { Inside, Outside, Unknown };

/// Decides whether M^{-1} g lies in the open cylinder dilated by `dilation`
/// (|y| < dilation and ||x||_2 < dilation, both strict and certified).
Membership body_membership(const IntVec& g, const TransformStack& stack,
                           const Enclosure& dilation);

/// Lifts an n x n matrix to (n+1) x (n+1) with a trailing 1.
EncMat lift(const EncMat& a, mpfr_prec_t prec);

}  // namespace qapprox
