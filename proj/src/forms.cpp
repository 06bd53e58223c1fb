#include "qapprox/forms.hpp"

#include <stdexcept>

namespace qapprox {

QuadraticForm::QuadraticForm(int dim, IntMat g) : n(dim), gram(std::move(g)) {
    if (n <= 0) throw std::invalid_argument("QuadraticForm: dimension must be positive");
    if (static_cast<int>(gram.size()) != n)
        throw std::invalid_argument("QuadraticForm: gram size mismatch");
    for (const auto& row : gram)
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("QuadraticForm: gram not square");
    if (!is_symmetric()) throw std::invalid_argument("QuadraticForm: gram not symmetric");
}

QuadraticForm QuadraticForm::identity(int dim) {
    IntMat g(dim, IntVec(dim, 0));
    for (int i = 0; i < dim; ++i) g[i][i] = 1;
    return QuadraticForm(dim, std::move(g));
}

QuadraticForm QuadraticForm::diagonal(const IntVec& d) {
    int dim = static_cast<int>(d.size());
    IntMat g(dim, IntVec(dim, 0));
    for (int i = 0; i < dim; ++i) g[i][i] = d[i];
    return QuadraticForm(dim, std::move(g));
}

bool QuadraticForm::is_symmetric() const {
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (gram[i][j] != gram[j][i]) return false;
    return true;
}

bool QuadraticForm::is_positive_definite() const {
    for (int k = 1; k <= n; ++k) {
        IntMat minor(k, IntVec(k));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) minor[i][j] = gram[i][j];
        if (int_determinant(std::move(minor)) <= 0) return false;
    }
    return true;
}

Int QuadraticForm::det() const { return int_determinant(gram); }

Rat QuadraticForm::evaluate(const RatVec& x) const {
    if (static_cast<int>(x.size()) != n)
        throw std::invalid_argument("QuadraticForm::evaluate: dimension mismatch");
    Rat acc(0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) acc += Rat(gram[i][j]) * x[i] * x[j];
    return acc;
}

Int QuadraticForm::evaluate_int(const IntVec& x) const {
    if (static_cast<int>(x.size()) != n)
        throw std::invalid_argument("QuadraticForm::evaluate_int: dimension mismatch");
    Int acc(0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) acc += gram[i][j] * x[i] * x[j];
    return acc;
}

Enclosure QuadraticForm::evaluate_enc(const std::vector<Enclosure>& x) const {
    if (static_cast<int>(x.size()) != n)
        throw std::invalid_argument("QuadraticForm::evaluate_enc: dimension mismatch");
    mpfr_prec_t prec = x[0].precision();
    Enclosure acc = Enclosure::from_int(0L, prec);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) acc = acc + Enclosure::from_int(gram[i][j], prec) * x[i] * x[j];
    return acc;
}

Rat QuadraticForm::bilinear(const RatVec& x, const RatVec& y) const {
    if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
        throw std::invalid_argument("QuadraticForm::bilinear: dimension mismatch");
    Rat acc(0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) acc += Rat(gram[i][j]) * x[i] * y[j];
    return acc;
}

Rat IndefiniteLift::evaluate(const RatVec& z) const {
    if (static_cast<int>(z.size()) != dim())
        throw std::invalid_argument("IndefiniteLift::evaluate: dimension mismatch");
    RatVec x(z.begin(), z.end() - 1);
    return base.evaluate(x) - z.back() * z.back();
}

Int IndefiniteLift::evaluate_int(const IntVec& z) const {
    if (static_cast<int>(z.size()) != dim())
        throw std::invalid_argument("IndefiniteLift::evaluate_int: dimension mismatch");
    IntVec x(z.begin(), z.end() - 1);
    return base.evaluate_int(x) - z.back() * z.back();
}

Int IndefiniteLift::bilinear_int(const IntVec& u, const IntVec& v) const {
    if (static_cast<int>(u.size()) != dim() || static_cast<int>(v.size()) != dim())
        throw std::invalid_argument("IndefiniteLift::bilinear_int: dimension mismatch");
    Int acc(0);
    const int n = base.n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) acc += base.gram[i][j] * u[i] * v[j];
    acc -= u[n] * v[n];
    return acc;
}

IntMat IndefiniteLift::coeff_matrix() const {
    const int m = dim();
    IntMat c(m, IntVec(m, 0));
    for (int i = 0; i < base.n; ++i)
        for (int j = 0; j < base.n; ++j) c[i][j] = base.gram[i][j];
    c[m - 1][m - 1] = -1;
    return c;
}

Enclosure ball_volume(int n, mpfr_prec_t prec) {
    if (n < 0) throw std::invalid_argument("ball_volume: negative dimension");
    Enclosure even = Enclosure::from_int(1L, prec);  // o_0
    Enclosure odd = Enclosure::from_int(2L, prec);   // o_1
    if (n == 0) return even;
    if (n == 1) return odd;
    Enclosure two_pi = Enclosure::pi(prec) * Enclosure::from_int(2L, prec);
    Enclosure cur = (n % 2 == 0) ? even : odd;
    for (int k = (n % 2 == 0) ? 2 : 3; k <= n; k += 2)
        cur = cur * two_pi / Enclosure::from_int(static_cast<long>(k), prec);
    return cur;
}

FormConstants compute_constants(const QuadraticForm& form, mpfr_prec_t prec) {
    FormConstants c{Enclosure(prec), Enclosure(prec), Enclosure(prec), Enclosure(prec)};
    const int n = form.n;
    c.o_n = ball_volume(n, prec);
    Enclosure sqrt_det = Enclosure::from_int(form.det(), prec).sqrt();
    c.v_f = c.o_n / sqrt_det;

    // (n+1)^{n+1} * 6^n * 2^{n^2}, exact integer
    Int num(1);
    Int np1(n + 1);
    for (int i = 0; i <= n; ++i) num *= np1;
    for (int i = 0; i < n; ++i) num *= 6;
    Int pow2;
    mpz_ui_pow_ui(pow2.get_mpz_t(), 2, static_cast<unsigned long>(n) * n);
    num *= pow2;

    Enclosure ratio = Enclosure::from_int(num, prec) / c.v_f.pow_ui(static_cast<unsigned long>(n) + 1);
    c.C_f = Enclosure::max(Enclosure::from_int(1L, prec), ratio);
    c.kappa_f = Enclosure::from_int(6L, prec) * c.C_f.square();
    return c;
}

}  // namespace qapprox
