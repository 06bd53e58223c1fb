#pragma once

#include "qapprox/lattice.hpp"
#include "qapprox/zeros.hpp"

namespace qapprox {

/// Raised when F = f - y^2 is anisotropic (no rational points on the
/// quadric exist at all).
struct AnisotropicForm : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// g = (a_1, ..., a_n, q) with F(g) = 0 and q >= 1, representing the
/// rational quadric point r = (a_1/q, ..., a_n/q).
struct QuadricRationalPoint {
    IntVec g;   ///< raw integer vector, q = g.back() >= 1
    RatVec r;   ///< reduced fractions a_i / q

    Int q() const { return g.back(); }
    static QuadricRationalPoint from_vector(IntVec g);
};

enum class Verdict { Certified, CertifiedWeakenedConstant, Failed };

/// Which construction produced the point: a nonzero lattice point inside
/// the open transformed cylinder (ShortVector), the successive-minima /
/// induced-form / small-zero route (InducedZero), or the direct search
/// over small denominators (Direct). The transform construction
/// bounds q <= T only once t = 2T/(3 C_f) exceeds sqrt(2); below that
/// threshold the direct search provides the small-denominator point the
/// statement still promises.
enum class CaseTaken { ShortVector, InducedZero, Direct };
enum class KappaKind { Standard, Effective, Weakened };

struct ApproximationCertificate {
    int n = 0;
    Rat T;
    Enclosure t_used;
    QuadricRationalPoint point;
    Enclosure kappa;       ///< the constant actually asserted
    KappaKind kappa_kind = KappaKind::Standard;
    Rat q_bound;           ///< denominator bound actually proven (= T unless effective)
    Enclosure lhs;         ///< f(alpha - r) * q * T
    bool lhs_exact = false;
    Rat lhs_rat;           ///< set when alpha is exactly rational
    Verdict verdict = Verdict::Failed;
    CaseTaken case_taken = CaseTaken::ShortVector;
    Enclosure surface_residual;
    Rat surface_slack;     ///< additive slack |f(alpha)-1| * q * T granted on kappa
    mpfr_prec_t precision = 0;
    std::string failure_reason;

    // diagnostics
    Enclosure v_n;                   ///< n-th coordinate of v = R^-1 W^-1 g
    std::vector<Enclosure> minima;   ///< gauges of the minima points (induced-zero case)
    IntVec zero_heights;             ///< heights of the isotropic zeros used (induced-zero case)
};

struct PipelineOptions {
    mpfr_prec_t precision = 128;
    mpfr_prec_t max_precision = 1024;
    std::uint64_t enum_budget = 50'000'000;
    std::uint64_t zero_budget = 100'000'000;
    Rat epsilon_surface = Rat(1, Int(1) << 40);
    bool lll_only = false;  ///< skip exact minima; certificates carry a weakened constant
    bool reduce_point = false;  ///< optional gcd reduction of g after the run
};

/// Realizes the main construction: choose t = 2T/(3 C_f), build the
/// transform stack, take the short-vector branch if a nonzero lattice point
/// lies in the open body, otherwise go through successive minima, the
/// induced form and its small zero; map back and certify.
ApproximationCertificate approximate(const QuadraticForm& form, const SurfacePoint& alpha,
                                     const Rat& T, const PipelineOptions& opts = {});

/// n+1 certificates with linearly independent integer vectors; each carries
/// an effective constant computed from the realized zero heights.
std::vector<ApproximationCertificate> approximate_independent(const QuadraticForm& form,
                                                              const SurfacePoint& alpha,
                                                              const Rat& T,
                                                              const PipelineOptions& opts = {});

enum class VerifyResult { Valid, Invalid, Indeterminate };

/// Independent re-check of a certificate: F(g) = 0 in exact integers, the
/// denominator bounds, the reduced fractions, the inequality
/// f(alpha - r) q T <= kappa (+ slack), and the identity
/// f(alpha - r) q^2 = F(g - q lift(alpha)).
VerifyResult verify_certificate(const ApproximationCertificate& cert, const QuadraticForm& form,
                                const SurfacePoint& alpha);

const char* to_string(Verdict v);
const char* to_string(CaseTaken c);
const char* to_string(KappaKind k);
const char* to_string(VerifyResult r);

}  // namespace qapprox
