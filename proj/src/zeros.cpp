#include "qapprox/zeros.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace qapprox {

IntegralForm::IntegralForm(int vars, IntMat c) : m(vars), coeffs(std::move(c)) {
    if (m <= 0) throw std::invalid_argument("IntegralForm: dimension must be positive");
    if (static_cast<int>(coeffs.size()) != m)
        throw std::invalid_argument("IntegralForm: coefficient matrix size mismatch");
    for (int i = 0; i < m; ++i) {
        if (static_cast<int>(coeffs[i].size()) != m)
            throw std::invalid_argument("IntegralForm: coefficient matrix not square");
        for (int j = 0; j < i; ++j)
            if (coeffs[i][j] != coeffs[j][i])
                throw std::invalid_argument("IntegralForm: coefficient matrix not symmetric");
    }
}

Int IntegralForm::evaluate(const IntVec& xi) const {
    if (static_cast<int>(xi.size()) != m)
        throw std::invalid_argument("IntegralForm::evaluate: dimension mismatch");
    Int acc(0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) acc += coeffs[i][j] * xi[i] * xi[j];
    return acc;
}

Int IntegralForm::coeff_abs_sum() const {
    Int s(0);
    for (const auto& row : coeffs)
        for (const auto& c : row) s += abs(c);
    return s;
}

Int IntegralForm::max_abs_coeff() const {
    Int s(0);
    for (const auto& row : coeffs)
        for (const auto& c : row) s = std::max(s, Int(abs(c)));
    return s;
}

Int IntegralForm::cassels_bound() const {
    // (3S)^{(m-1)/2}; for even m-1 an exact power, otherwise the floor of
    // the square root of (3S)^{m-1}.
    Int base = 3 * coeff_abs_sum();
    if (base == 0) return Int(0);
    Int pow;
    mpz_pow_ui(pow.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(m - 1));
    if ((m - 1) % 2 == 0) {
        Int r;
        mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>((m - 1) / 2));
        return r;
    }
    Int r;
    mpz_sqrt(r.get_mpz_t(), pow.get_mpz_t());
    return r;
}

InducedForm induced_form(const IndefiniteLift& lift, const std::vector<IntVec>& generators) {
    const int m = static_cast<int>(generators.size());
    IntMat q(m, IntVec(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) q[i][j] = lift.bilinear_int(generators[i], generators[j]);
    InducedForm out;
    out.form = IntegralForm(m, std::move(q));
    out.generators = generators;
    return out;
}

namespace {

struct ShellSearch {
    const IntegralForm& q;
    std::uint64_t budget;
    std::uint64_t used = 0;

    bool use_ll = false;
    std::vector<std::vector<long long>> cll;

    explicit ShellSearch(const IntegralForm& form, std::uint64_t b) : q(form), budget(b) {}

    void prepare(long h) {
        // long long is safe when |Q(v)| <= S h^2 stays well below 2^62
        Int limit = q.coeff_abs_sum() * Int(h) * Int(h);
        use_ll = mpz_fits_slong_p(q.max_abs_coeff().get_mpz_t()) &&
                 limit < (Int(1) << 62);
        if (use_ll && cll.empty()) {
            cll.assign(q.m, std::vector<long long>(q.m));
            for (int i = 0; i < q.m; ++i)
                for (int j = 0; j < q.m; ++j) cll[i][j] = static_cast<long long>(q.coeffs[i][j].get_si());
        }
        if (!use_ll) cll.clear();
    }

    bool eval_is_zero(const std::vector<long>& v) {
        if (use_ll) {
            long long acc = 0;
            for (int i = 0; i < q.m; ++i) {
                acc += cll[i][i] * v[i] * v[i];
                for (int j = i + 1; j < q.m; ++j) acc += 2 * cll[i][j] * v[i] * v[j];
            }
            return acc == 0;
        }
        IntVec xi(v.begin(), v.end());
        return q.evaluate(xi) == 0;
    }

    /// Visits every primitive vector with sup-norm exactly h and first
    /// nonzero entry positive, in lexicographic order, calling fn on zeros.
    /// fn returns true to stop the whole search.
    bool shell(long h, const std::function<bool(const std::vector<long>&)>& fn) {
        prepare(h);
        std::vector<long> v(q.m, 0);
        return descend(h, 0, false, false, v, fn);
    }

    bool descend(long h, int idx, bool nonzero_seen, bool hit_h, std::vector<long>& v,
                 const std::function<bool(const std::vector<long>&)>& fn) {
        if (idx == q.m) {
            if (!nonzero_seen || !hit_h) return false;
            long g = 0;
            for (long x : v) g = std::gcd(g, std::abs(x));
            if (g != 1) return false;
            if (++used > budget) throw SearchBudgetExceeded("zero search budget exceeded");
            if (eval_is_zero(v)) return fn(v);
            return false;
        }
        long lo = nonzero_seen ? -h : 0;
        for (long x = lo; x <= h; ++x) {
            v[idx] = x;
            if (descend(h, idx + 1, nonzero_seen || x != 0, hit_h || std::abs(x) == h, v, fn))
                return true;
        }
        v[idx] = 0;
        return false;
    }
};

IsotropicZero make_zero(const std::vector<long>& v) {
    IsotropicZero z;
    z.vec.assign(v.begin(), v.end());
    z.height = 0;
    for (long x : v) z.height = std::max(z.height, Int(std::abs(x)));
    return z;
}

}  // namespace

std::optional<IsotropicZero> decide_isotropy(const IntegralForm& q, std::uint64_t budget,
                                             Int* bound_searched) {
    Int bound = q.cassels_bound();
    if (bound_searched) *bound_searched = bound;
    if (!mpz_fits_slong_p(bound.get_mpz_t()))
        throw SearchBudgetExceeded("decide_isotropy: Cassels bound out of practical range");
    long hb = bound.get_si();
    ShellSearch search(q, budget);
    std::optional<IsotropicZero> found;
    for (long h = 1; h <= hb; ++h) {
        search.shell(h, [&](const std::vector<long>& v) {
            found = make_zero(v);
            return true;
        });
        if (found) return found;
    }
    return std::nullopt;  // completed search: anisotropic by the Cassels theorem
}

IsotropicZero small_zero(const IntegralForm& q, std::uint64_t budget) {
    Int bound;
    auto z = decide_isotropy(q, budget, &bound);
    if (!z)
        throw std::logic_error(
            "small_zero: no zero within the Cassels bound; the form was not isotropic");
    return *z;
}

std::vector<IsotropicZero> independent_zeros(const IntegralForm& q, int k, std::uint64_t budget,
                                             bool* complete) {
    if (k > q.m) throw std::invalid_argument("independent_zeros: k exceeds variable count");
    std::vector<IsotropicZero> chosen;
    std::vector<IntVec> rows;
    ShellSearch search(q, budget);
    if (complete) *complete = false;
    try {
        for (long h = 1; static_cast<int>(chosen.size()) < k; ++h) {
            search.shell(h, [&](const std::vector<long>& v) {
                IsotropicZero z = make_zero(v);
                std::vector<IntVec> trial = rows;
                trial.push_back(z.vec);
                if (int_rank(trial) == static_cast<int>(trial.size())) {
                    rows.push_back(z.vec);
                    chosen.push_back(std::move(z));
                }
                return static_cast<int>(chosen.size()) == k;
            });
        }
        if (complete) *complete = true;
    } catch (const SearchBudgetExceeded&) {
        // partial result; completeness flag stays false
    }
    return chosen;
}

}  // namespace qapprox
