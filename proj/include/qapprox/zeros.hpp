#pragma once

#include <cstdint>
#include <optional>

#include "qapprox/forms.hpp"

namespace qapprox {

struct SearchBudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Symmetric integral quadratic form in m variables.
struct IntegralForm {
    int m = 0;
    IntMat coeffs;  // m x m symmetric

    IntegralForm() = default;
    IntegralForm(int vars, IntMat c);

    Int evaluate(const IntVec& xi) const;
    /// Sum of |Q_ij| over all entries.
    Int coeff_abs_sum() const;
    Int max_abs_coeff() const;
    /// floor((3 * coeff_abs_sum)^((m-1)/2)), the height within which an
    /// isotropic form is guaranteed a nonzero zero.
    Int cassels_bound() const;
};

/// Q(xi) = F(sum xi_i g_i) built from n+1 integer generators.
struct InducedForm {
    IntegralForm form;
    std::vector<IntVec> generators;
};

InducedForm induced_form(const IndefiniteLift& lift, const std::vector<IntVec>& generators);

struct IsotropicZero {
    IntVec vec;  ///< primitive, first nonzero entry positive
    Int height;  ///< max |entry|
};

/// Nonzero integer zero with minimal sup-norm height, found by shell-ordered
/// search up to the Cassels bound; std::nullopt if the completed search
/// proves the form anisotropic. `bound_searched`, when non-null, receives
/// the height bound. Throws SearchBudgetExceeded when the evaluation budget
/// runs out before the bound is reached.
std::optional<IsotropicZero> decide_isotropy(const IntegralForm& q, std::uint64_t budget,
                                             Int* bound_searched = nullptr);

/// Same search, for forms known to be isotropic; exhausting the bound
/// without a zero signals an upstream contract violation.
IsotropicZero small_zero(const IntegralForm& q, std::uint64_t budget);

/// k linearly independent zeros collected greedily in increasing height
/// (rank checked exactly). The search keeps expanding shells past the
/// Cassels bound until k are found or the budget runs out; `complete`
/// reports whether all k were found.
std::vector<IsotropicZero> independent_zeros(const IntegralForm& q, int k, std::uint64_t budget,
                                             bool* complete = nullptr);

}  // namespace qapprox
