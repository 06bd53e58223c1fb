#include "qapprox/arith.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <memory>

namespace qapprox {

Enclosure Enclosure::from_int(long v, mpfr_prec_t prec) {
    Enclosure e(prec);
    mpfr_set_si(e.lo_.get(), v, MPFR_RNDD);
    mpfr_set_si(e.hi_.get(), v, MPFR_RNDU);
    return e;
}

Enclosure Enclosure::from_int(const Int& v, mpfr_prec_t prec) {
    Enclosure e(prec);
    mpfr_set_z(e.lo_.get(), v.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(e.hi_.get(), v.get_mpz_t(), MPFR_RNDU);
    return e;
}

Enclosure Enclosure::from_rat(const Rat& v, mpfr_prec_t prec) {
    Enclosure e(prec);
    mpfr_set_q(e.lo_.get(), v.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(e.hi_.get(), v.get_mpq_t(), MPFR_RNDU);
    return e;
}

Enclosure Enclosure::pi(mpfr_prec_t prec) {
    Enclosure e(prec);
    mpfr_const_pi(e.lo_.get(), MPFR_RNDD);
    mpfr_const_pi(e.hi_.get(), MPFR_RNDU);
    return e;
}

Enclosure Enclosure::from_endpoints(const Real& lo, const Real& hi, mpfr_prec_t prec) {
    Enclosure e(prec);
    mpfr_set(e.lo_.get(), lo.get(), MPFR_RNDD);
    mpfr_set(e.hi_.get(), hi.get(), MPFR_RNDU);
    if (mpfr_cmp(e.lo_.get(), e.hi_.get()) > 0)
        throw std::invalid_argument("Enclosure: lo > hi");
    return e;
}

Enclosure Enclosure::operator+(const Enclosure& o) const {
    Enclosure r(std::max(prec_, o.prec_));
    mpfr_add(r.lo_.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
    mpfr_add(r.hi_.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
    return r;
}

Enclosure Enclosure::operator-(const Enclosure& o) const {
    Enclosure r(std::max(prec_, o.prec_));
    mpfr_sub(r.lo_.get(), lo_.get(), o.hi_.get(), MPFR_RNDD);
    mpfr_sub(r.hi_.get(), hi_.get(), o.lo_.get(), MPFR_RNDU);
    return r;
}

Enclosure Enclosure::operator-() const {
    Enclosure r(prec_);
    mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
    mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
    return r;
}

Enclosure Enclosure::operator*(const Enclosure& o) const {
    mpfr_prec_t p = std::max(prec_, o.prec_);
    Enclosure r(p);
    // lo: minimum of the four endpoint products rounded down;
    // hi: maximum rounded up.
    Real t(p), best_lo(p), best_hi(p);
    mpfr_srcptr a[2] = {lo_.get(), hi_.get()};
    mpfr_srcptr b[2] = {o.lo_.get(), o.hi_.get()};
    bool first = true;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            mpfr_mul(t.get(), a[i], b[j], MPFR_RNDD);
            if (first || mpfr_cmp(t.get(), best_lo.get()) < 0) mpfr_set(best_lo.get(), t.get(), MPFR_RNDD);
            mpfr_mul(t.get(), a[i], b[j], MPFR_RNDU);
            if (first || mpfr_cmp(t.get(), best_hi.get()) > 0) mpfr_set(best_hi.get(), t.get(), MPFR_RNDU);
            first = false;
        }
    mpfr_set(r.lo_.get(), best_lo.get(), MPFR_RNDD);
    mpfr_set(r.hi_.get(), best_hi.get(), MPFR_RNDU);
    return r;
}

Enclosure Enclosure::inv() const {
    if (contains_zero()) throw std::domain_error("Enclosure::inv: interval contains zero");
    Enclosure r(prec_);
    mpfr_ui_div(r.lo_.get(), 1, hi_.get(), MPFR_RNDD);
    mpfr_ui_div(r.hi_.get(), 1, lo_.get(), MPFR_RNDU);
    return r;
}

Enclosure Enclosure::operator/(const Enclosure& o) const { return *this * o.inv(); }

Enclosure Enclosure::sqrt() const {
    if (mpfr_sgn(hi_.get()) < 0) throw std::domain_error("Enclosure::sqrt of negative interval");
    Enclosure r(prec_);
    if (mpfr_sgn(lo_.get()) < 0)
        mpfr_set_zero(r.lo_.get(), 1);
    else
        mpfr_sqrt(r.lo_.get(), lo_.get(), MPFR_RNDD);
    mpfr_sqrt(r.hi_.get(), hi_.get(), MPFR_RNDU);
    return r;
}

Enclosure Enclosure::abs() const {
    Enclosure r(prec_);
    if (mpfr_sgn(lo_.get()) >= 0) return *this;
    if (mpfr_sgn(hi_.get()) <= 0) return -*this;
    // straddles zero
    mpfr_set_zero(r.lo_.get(), 1);
    Real na(prec_);
    mpfr_neg(na.get(), lo_.get(), MPFR_RNDU);
    if (mpfr_cmp(na.get(), hi_.get()) > 0)
        mpfr_set(r.hi_.get(), na.get(), MPFR_RNDU);
    else
        mpfr_set(r.hi_.get(), hi_.get(), MPFR_RNDU);
    return r;
}

Enclosure Enclosure::square() const {
    Enclosure a = abs();
    return a * a;
}

Enclosure Enclosure::pow_ui(unsigned long e) const {
    Enclosure acc = Enclosure::from_int(1L, prec_);
    Enclosure base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

Enclosure Enclosure::max(const Enclosure& a, const Enclosure& b) {
    Enclosure r(std::max(a.prec_, b.prec_));
    mpfr_max(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_max(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return r;
}

Truth Enclosure::leq(const Enclosure& o) const {
    if (mpfr_cmp(hi_.get(), o.lo_.get()) <= 0) return Truth::True;
    if (mpfr_cmp(lo_.get(), o.hi_.get()) > 0) return Truth::False;
    return Truth::Unknown;
}

Truth Enclosure::less(const Enclosure& o) const {
    if (mpfr_cmp(hi_.get(), o.lo_.get()) < 0) return Truth::True;
    if (mpfr_cmp(lo_.get(), o.hi_.get()) >= 0) return Truth::False;
    return Truth::Unknown;
}

Truth Enclosure::leq_rat(const Rat& r) const {
    int cl = mpfr_cmp_q(hi_.get(), r.get_mpq_t());
    if (cl <= 0) return Truth::True;
    if (mpfr_cmp_q(lo_.get(), r.get_mpq_t()) > 0) return Truth::False;
    return Truth::Unknown;
}

Truth Enclosure::geq_rat(const Rat& r) const {
    if (mpfr_cmp_q(lo_.get(), r.get_mpq_t()) >= 0) return Truth::True;
    if (mpfr_cmp_q(hi_.get(), r.get_mpq_t()) < 0) return Truth::False;
    return Truth::Unknown;
}

bool Enclosure::contains_zero() const {
    return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0;
}

bool Enclosure::contains(const Rat& r) const {
    return mpfr_cmp_q(lo_.get(), r.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), r.get_mpq_t()) >= 0;
}

bool Enclosure::is_point() const { return mpfr_cmp(lo_.get(), hi_.get()) == 0; }

bool Enclosure::contains_interval(const Enclosure& o) const {
    return mpfr_cmp(lo_.get(), o.lo_.get()) <= 0 && mpfr_cmp(hi_.get(), o.hi_.get()) >= 0;
}

bool Enclosure::intersects(const Enclosure& o) const {
    return mpfr_cmp(lo_.get(), o.hi_.get()) <= 0 && mpfr_cmp(o.lo_.get(), hi_.get()) <= 0;
}

static Rat mpfr_to_rat(mpfr_srcptr x) {
    if (!mpfr_number_p(x)) throw std::domain_error("mpfr_to_rat: non-finite endpoint");
    if (mpfr_zero_p(x)) return Rat(0);
    Int m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
    Rat r(m);
    if (e >= 0) {
        Int p;
        mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e));
        r *= Rat(p);
    } else {
        Int p;
        mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(-e));
        r /= Rat(p);
    }
    r.canonicalize();
    return r;
}

Rat Enclosure::lower_rat() const { return mpfr_to_rat(lo_.get()); }
Rat Enclosure::upper_rat() const { return mpfr_to_rat(hi_.get()); }
Rat Enclosure::width() const { return upper_rat() - lower_rat(); }

double Enclosure::mid_double() const {
    return (mpfr_get_d(lo_.get(), MPFR_RNDN) + mpfr_get_d(hi_.get(), MPFR_RNDN)) / 2.0;
}

static std::string mpfr_hex(mpfr_srcptr x) {
    char* s = nullptr;
    mpfr_asprintf(&s, "%Ra", x);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

std::string Enclosure::to_hex() const { return mpfr_hex(lo_.get()) + " " + mpfr_hex(hi_.get()); }

Enclosure Enclosure::from_hex(const std::string& s, mpfr_prec_t prec) {
    auto sp = s.find(' ');
    if (sp == std::string::npos) throw std::invalid_argument("Enclosure::from_hex: bad format");
    Enclosure e(prec);
    if (mpfr_set_str(e.lo_.get(), s.substr(0, sp).c_str(), 0, MPFR_RNDD) != 0)
        throw std::invalid_argument("Enclosure::from_hex: bad lo");
    if (mpfr_set_str(e.hi_.get(), s.substr(sp + 1).c_str(), 0, MPFR_RNDU) != 0)
        throw std::invalid_argument("Enclosure::from_hex: bad hi");
    if (mpfr_cmp(e.lo_.get(), e.hi_.get()) > 0)
        throw std::invalid_argument("Enclosure::from_hex: lo > hi");
    return e;
}

std::string Enclosure::to_decimal(int digits) const {
    char* a = nullptr;
    char* b = nullptr;
    mpfr_asprintf(&a, "%.*RDe", digits, lo_.get());
    mpfr_asprintf(&b, "%.*RUe", digits, hi_.get());
    std::string out = std::string("[") + a + ", " + b + "]";
    mpfr_free_str(a);
    mpfr_free_str(b);
    return out;
}

Truth certified_leq(const Enclosure& a, const Enclosure& b) { return a.leq(b); }

// ---------------------------------------------------------------------------
// Expression mini-grammar.

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;
    mpfr_prec_t prec;

    explicit Parser(const std::string& str, mpfr_prec_t p) : s(str), prec(p) {}

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("expression parse error at position " + std::to_string(pos) +
                                    ": " + what);
    }

    Enclosure expr() {
        Enclosure v = term();
        for (;;) {
            if (eat('+'))
                v = v + term();
            else if (eat('-'))
                v = v - term();
            else
                return v;
        }
    }
    Enclosure term() {
        Enclosure v = factor();
        for (;;) {
            if (eat('*'))
                v = v * factor();
            else if (eat('/'))
                v = v / factor();
            else
                return v;
        }
    }
    Enclosure factor() {
        skip();
        if (eat('-')) return -factor();
        if (eat('(')) {
            Enclosure v = expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            return Enclosure::from_int(Int(s.substr(start, pos - start)), prec);
        }
        if (s.compare(pos, 5, "sqrt(") == 0) {
            pos += 5;
            Enclosure v = expr();
            if (!eat(')')) fail("expected ')' after sqrt");
            return v.sqrt();
        }
        if (s.compare(pos, 2, "pi") == 0) {
            pos += 2;
            return Enclosure::pi(prec);
        }
        fail("unexpected token");
    }
};

}  // namespace

Enclosure eval_expression(const std::string& expr, mpfr_prec_t prec) {
    Parser p(expr, prec);
    Enclosure v = p.expr();
    p.skip();
    if (p.pos != expr.size()) p.fail("trailing input");
    return v;
}

// ---------------------------------------------------------------------------
// Exact integer linear algebra (Bareiss).

Int int_determinant(std::vector<std::vector<Int>> m) {
    const size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw std::invalid_argument("int_determinant: not square");
    if (n == 0) return Int(1);
    Int prev(1);
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            size_t piv = k + 1;
            while (piv < n && m[piv][k] == 0) ++piv;
            if (piv == n) return Int(0);
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : Int(-m[n - 1][n - 1]);
}

int int_rank(std::vector<std::vector<Int>> m) {
    if (m.empty()) return 0;
    const size_t rows = m.size(), cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[r], m[piv]);
        for (size_t i = r + 1; i < rows; ++i) {
            if (m[i][c] == 0) continue;
            Int a = m[r][c], b = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] = m[i][j] * a - m[r][j] * b;
        }
        ++r;
    }
    return static_cast<int>(r);
}

}  // namespace qapprox
