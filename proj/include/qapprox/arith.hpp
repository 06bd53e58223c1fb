#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace qapprox {

using Int = mpz_class;
using Rat = mpq_class;

/// Three-valued outcome of a certified comparison.
enum class Truth { True, False, Unknown };

/// Raised when an operation cannot be decided at the working precision.
/// Callers escalate precision and retry.
struct NeedMorePrecision : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// RAII wrapper around a single mpfr_t.
class Real {
  public:
    explicit Real(mpfr_prec_t prec = 64) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

  private:
    mpfr_t v_;
};

/// Closed interval [lo, hi] with dyadic (MPFR) endpoints, rounded outward
/// on every operation, so the interval always contains the exact value of
/// the expression it was built from.
class Enclosure {
  public:
    explicit Enclosure(mpfr_prec_t prec = 64) : lo_(prec), hi_(prec), prec_(prec) {}

    static Enclosure from_int(long v, mpfr_prec_t prec);
    static Enclosure from_int(const Int& v, mpfr_prec_t prec);
    static Enclosure from_rat(const Rat& v, mpfr_prec_t prec);
    static Enclosure pi(mpfr_prec_t prec);
    /// Interval from two already-rounded endpoints.
    static Enclosure from_endpoints(const Real& lo, const Real& hi, mpfr_prec_t prec);

    mpfr_prec_t precision() const { return prec_; }
    mpfr_srcptr lo() const { return lo_.get(); }
    mpfr_srcptr hi() const { return hi_.get(); }

    Enclosure operator+(const Enclosure& o) const;
    Enclosure operator-(const Enclosure& o) const;
    Enclosure operator*(const Enclosure& o) const;
    /// Throws std::domain_error if the divisor interval contains zero.
    Enclosure operator/(const Enclosure& o) const;
    Enclosure operator-() const;

    Enclosure sqrt() const;  ///< requires hi >= 0; lo clamped to 0 if slightly negative
    Enclosure abs() const;
    Enclosure square() const;
    Enclosure pow_ui(unsigned long e) const;
    /// Multiplicative inverse; throws std::domain_error on zero-containing interval.
    Enclosure inv() const;

    static Enclosure max(const Enclosure& a, const Enclosure& b);

    /// Certified a <= b: True only when hi(a) <= lo(b), False only when lo(a) > hi(b).
    Truth leq(const Enclosure& o) const;
    /// Certified strict a < b.
    Truth less(const Enclosure& o) const;
    Truth leq_rat(const Rat& r) const;
    Truth geq_rat(const Rat& r) const;

    bool contains_zero() const;
    bool contains(const Rat& r) const;
    /// True when both endpoints coincide (exactly representable value).
    bool is_point() const;
    /// True when the other interval lies inside this one.
    bool contains_interval(const Enclosure& o) const;
    bool intersects(const Enclosure& o) const;

    /// Exact rational value of an endpoint (endpoints are dyadic).
    Rat lower_rat() const;
    Rat upper_rat() const;
    Rat width() const;
    double mid_double() const;

    /// Exact hex-float round-trip form "lo hi".
    std::string to_hex() const;
    static Enclosure from_hex(const std::string& s, mpfr_prec_t prec);
    /// Human-readable decimal "[lo, hi]".
    std::string to_decimal(int digits = 20) const;

  private:
    Real lo_, hi_;
    mpfr_prec_t prec_;
};

Truth certified_leq(const Enclosure& a, const Enclosure& b);

/// Evaluates a small arithmetic expression ("(1+sqrt(5))/2", "pi/4", ...)
/// to an enclosure at the requested precision. Grammar: +, -, *, /, unary
/// minus, parentheses, integer literals, `pi`, and `sqrt(expr)`.
Enclosure eval_expression(const std::string& expr, mpfr_prec_t prec);

// Small exact-integer linear algebra used across modules.

/// Determinant by fraction-free (Bareiss) elimination.
Int int_determinant(std::vector<std::vector<Int>> m);
/// Rank over Q by fraction-free elimination.
int int_rank(std::vector<std::vector<Int>> m);

}  // namespace qapprox
