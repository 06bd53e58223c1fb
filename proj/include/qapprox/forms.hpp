#pragma once

#include <vector>

#include "qapprox/arith.hpp"

namespace qapprox {

using IntMat = std::vector<std::vector<Int>>;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

/// Integral positive definite quadratic form f(x) = x^T gram x.
struct QuadraticForm {
    int n = 0;
    IntMat gram;  // n x n symmetric

    QuadraticForm() = default;
    QuadraticForm(int dim, IntMat g);

    static QuadraticForm identity(int dim);
    static QuadraticForm diagonal(const IntVec& d);

    bool is_symmetric() const;
    bool is_positive_definite() const;
    Int det() const;

    Rat evaluate(const RatVec& x) const;
    Int evaluate_int(const IntVec& x) const;
    Enclosure evaluate_enc(const std::vector<Enclosure>& x) const;
    /// Bilinear value x^T gram y, exact rational.
    Rat bilinear(const RatVec& x, const RatVec& y) const;
};

/// The indefinite lift F(z) = f(x) - y^2 in n+1 variables z = (x, y).
struct IndefiniteLift {
    QuadraticForm base;

    explicit IndefiniteLift(QuadraticForm f) : base(std::move(f)) {}

    int dim() const { return base.n + 1; }

    Rat evaluate(const RatVec& z) const;
    Int evaluate_int(const IntVec& z) const;
    /// Exact integer bilinear value B_F(u, v); B_F(u, u) = F(u).
    Int bilinear_int(const IntVec& u, const IntVec& v) const;
    /// Symmetric coefficient matrix of F (gram extended by -1 corner).
    IntMat coeff_matrix() const;
};

/// The constants of the approximation bound: unit-ball volume, the
/// volume of {|f| < 1}, and the dilation and bound constants built
/// from them.
struct FormConstants {
    Enclosure o_n;      ///< volume of the n-dimensional unit ball
    Enclosure v_f;      ///< o_n / sqrt(det gram)
    Enclosure C_f;      ///< max{1, (n+1)^{n+1} 6^n 2^{n^2} / v_f^{n+1}}
    Enclosure kappa_f;  ///< 6 C_f^2
};

/// Volume of the unit ball in dimension n as an enclosure
/// (recurrence o_n = (2 pi / n) o_{n-2}, o_0 = 1, o_1 = 2).
Enclosure ball_volume(int n, mpfr_prec_t prec);

FormConstants compute_constants(const QuadraticForm& form, mpfr_prec_t prec);

}  // namespace qapprox
