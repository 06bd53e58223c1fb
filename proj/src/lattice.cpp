#include "qapprox/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

namespace qapprox {

namespace {

using DVec = std::vector<double>;
using DMat = std::vector<std::vector<double>>;

DMat midpoint_inverse(const TransformStack& stack) {
    const int d = stack.n + 1;
    DMat a(d, DVec(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) a[i][j] = stack.M_inv[i][j].mid_double();
    return a;
}

DVec map_int(const DMat& a, const IntVec& v) {
    const size_t d = a.size();
    DVec out(d, 0.0);
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) out[i] += a[i][j] * v[j].get_d();
    return out;
}

double dot(const DVec& a, const DVec& b) {
    double s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

struct GramSchmidt {
    DMat mu;      // lower triangular coefficients
    DVec c;       // squared norms of the orthogonalized vectors
};

GramSchmidt gram_schmidt(const DMat& y) {
    const size_t d = y.size();
    DMat star = y;
    GramSchmidt gs{DMat(d, DVec(d, 0.0)), DVec(d, 0.0)};
    for (size_t i = 0; i < d; ++i) {
        star[i] = y[i];
        for (size_t j = 0; j < i; ++j) {
            gs.mu[i][j] = dot(y[i], star[j]) / gs.c[j];
            for (size_t k = 0; k < star[i].size(); ++k) star[i][k] -= gs.mu[i][j] * star[j][k];
        }
        gs.c[i] = dot(star[i], star[i]);
    }
    return gs;
}

void sign_normalize(IntVec& v) {
    for (const auto& x : v) {
        if (x > 0) return;
        if (x < 0) {
            for (auto& y : v) y = -y;
            return;
        }
    }
}

bool is_zero(const IntVec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

/// Exact dyadic upper endpoint order with lexicographic tie-break; a
/// genuine strict total order, safe for std::sort.
struct GaugeOrder {
    const std::vector<Enclosure>* gauges;
    const std::vector<IntVec>* vecs;
    bool operator()(size_t a, size_t b) const {
        Rat ua = (*gauges)[a].upper_rat();
        Rat ub = (*gauges)[b].upper_rat();
        if (ua != ub) return ua < ub;
        return (*vecs)[a] < (*vecs)[b];
    }
};

}  // namespace

ReducedBasis reduce(const TransformStack& stack, double delta) {
    const int d = stack.n + 1;
    std::vector<IntVec> b(d, IntVec(d, 0));
    for (int i = 0; i < d; ++i) b[i][i] = 1;

    DMat a = midpoint_inverse(stack);
    auto images = [&] {
        DMat y(d);
        for (int i = 0; i < d; ++i) y[i] = map_int(a, b[i]);
        return y;
    };

    DMat y = images();
    GramSchmidt gs = gram_schmidt(y);
    int k = 1;
    int guard = 0;
    while (k < d && ++guard < 100000) {
        for (int j = k - 1; j >= 0; --j) {
            double q = std::round(gs.mu[k][j]);
            if (q != 0.0) {
                Int qi;
                mpz_set_d(qi.get_mpz_t(), q);
                for (int l = 0; l < d; ++l) b[k][l] -= qi * b[j][l];
                y = images();
                gs = gram_schmidt(y);
            }
        }
        if (gs.c[k] >= (delta - gs.mu[k][k - 1] * gs.mu[k][k - 1]) * gs.c[k - 1]) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            y = images();
            gs = gram_schmidt(y);
            k = std::max(1, k - 1);
        }
    }

    ReducedBasis rb;
    rb.delta = delta;
    std::vector<Enclosure> gauges;
    gauges.reserve(d);
    for (int i = 0; i < d; ++i) gauges.push_back(stack.gauge(b[i]));
    std::vector<size_t> idx(d);
    for (int i = 0; i < d; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), GaugeOrder{&gauges, &b});
    for (size_t i : idx) {
        rb.basis.push_back(b[i]);
        rb.gauge_norms.push_back(gauges[i]);
    }
    return rb;
}

std::vector<IntVec> enumerate_ellipsoid(const TransformStack& stack, double radius,
                                        std::uint64_t budget) {
    ReducedBasis rb = reduce(stack);
    const int d = stack.n + 1;
    DMat a = midpoint_inverse(stack);
    DMat y(d);
    for (int i = 0; i < d; ++i) y[i] = map_int(a, rb.basis[i]);
    GramSchmidt gs = gram_schmidt(y);
    const double r2 = radius * radius;

    std::set<IntVec> found;
    std::uint64_t nodes = 0;

    // ||sum x_i y_i||^2 = sum_j c_j (x_j + sum_{i>j} mu_ij x_i)^2,
    // enumerated from the last coordinate down.
    std::vector<long> coeff(d, 0);
    std::function<void(int, double)> rec = [&](int level, double used) {
        if (level < 0) {
            IntVec v(d, 0);
            for (int i = 0; i < d; ++i)
                for (int l = 0; l < d; ++l) v[l] += Int(coeff[i]) * rb.basis[i][l];
            if (!is_zero(v)) {
                sign_normalize(v);
                found.insert(std::move(v));
            }
            return;
        }
        double center = 0;
        for (int i = level + 1; i < d; ++i) center -= gs.mu[i][level] * coeff[i];
        double room = r2 - used;
        if (room < 0) return;
        if (gs.c[level] <= 0) throw NeedMorePrecision("enumerate_ellipsoid: degenerate projection");
        double half = std::sqrt(room / gs.c[level]);
        long lo = static_cast<long>(std::ceil(center - half - 1e-9));
        long hi = static_cast<long>(std::floor(center + half + 1e-9));
        for (long xi = lo; xi <= hi; ++xi) {
            if (++nodes > budget) throw EnumerationBudgetExceeded("lattice enumeration budget exceeded");
            coeff[level] = xi;
            double off = xi - center;
            rec(level - 1, used + gs.c[level] * off * off);
        }
        coeff[level] = 0;
    };
    rec(d - 1, 0.0);

    return {found.begin(), found.end()};
}

std::vector<IntVec> successive_minima_points(const TransformStack& stack, int k,
                                             std::uint64_t budget,
                                             std::vector<Enclosure>* gauges_out) {
    ReducedBasis rb = reduce(stack);
    const int d = stack.n + 1;
    if (k > d) throw std::invalid_argument("successive_minima_points: k > dimension");

    // The k reduced basis vectors of largest gauge certainly realize the
    // minima as an upper bound; enumerate everything up to that gauge.
    double bound = 0;
    for (int i = 0; i < k; ++i)
        bound = std::max(bound, mpfr_get_d(rb.gauge_norms[i].hi(), MPFR_RNDU));
    double radius = std::sqrt(2.0) * bound * 1.01 + 1e-9;

    std::vector<IntVec> cands = enumerate_ellipsoid(stack, radius, budget);
    std::vector<Enclosure> gauges;
    gauges.reserve(cands.size());
    for (const auto& v : cands) gauges.push_back(stack.gauge(v));

    std::vector<size_t> idx(cands.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), GaugeOrder{&gauges, &cands});

    std::vector<IntVec> chosen;
    std::vector<Enclosure> chosen_gauges;
    for (size_t i : idx) {
        if (static_cast<int>(chosen.size()) == k) break;
        std::vector<IntVec> trial = chosen;
        trial.push_back(cands[i]);
        if (int_rank(trial) == static_cast<int>(trial.size())) {
            chosen.push_back(cands[i]);
            chosen_gauges.push_back(gauges[i]);
        }
    }
    if (static_cast<int>(chosen.size()) < k)
        throw std::logic_error("successive_minima_points: enumeration missed independent vectors");
    if (gauges_out) *gauges_out = std::move(chosen_gauges);
    return chosen;
}

std::optional<IntVec> first_minimum_below_one(const TransformStack& stack,
                                              const Enclosure& dilation,
                                              std::uint64_t budget) {
    double dil = mpfr_get_d(dilation.hi(), MPFR_RNDU);
    double radius = std::sqrt(2.0) * dil * 1.01 + 1e-9;
    std::vector<IntVec> cands = enumerate_ellipsoid(stack, radius, budget);

    std::vector<Enclosure> gauges;
    gauges.reserve(cands.size());
    for (const auto& v : cands) gauges.push_back(stack.gauge(v));
    std::vector<size_t> idx(cands.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), GaugeOrder{&gauges, &cands});

    bool saw_unknown = false;
    for (size_t i : idx) {
        switch (body_membership(cands[i], stack, dilation)) {
            case Membership::Inside:
                // earlier boundary-straddling candidates do not matter:
                // existence is all that is claimed here
                return cands[i];
            case Membership::Unknown:
                saw_unknown = true;
                break;
            case Membership::Outside:
                break;
        }
    }
    if (saw_unknown)
        throw NeedMorePrecision("first_minimum_below_one: boundary-straddling candidate");
    return std::nullopt;
}

}  // namespace qapprox
