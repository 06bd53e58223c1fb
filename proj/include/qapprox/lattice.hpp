#pragma once

#include <cstdint>
#include <optional>

#include "qapprox/transforms.hpp"

namespace qapprox {

struct EnumerationBudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Integer basis of Z^{n+1} reduced against the ellipsoidal norm
/// ||M^{-1} v||_2, with the cylinder gauge of each vector recorded.
struct ReducedBasis {
    std::vector<IntVec> basis;         ///< rows, sorted by gauge ascending
    std::vector<Enclosure> gauge_norms;
    double delta = 0.99;
};

/// LLL reduction of the standard integer lattice under the norm induced
/// by the stack (Gram-Schmidt in double precision; the integer row
/// operations keep the basis unimodular regardless).
ReducedBasis reduce(const TransformStack& stack, double delta = 0.99);

/// All nonzero integer vectors v with ||M^{-1} v||_2 <= radius (double,
/// caller inflates), sign-normalized (first nonzero entry positive) and
/// deduplicated. Throws EnumerationBudgetExceeded past `budget` nodes.
std::vector<IntVec> enumerate_ellipsoid(const TransformStack& stack, double radius,
                                        std::uint64_t budget);

/// k linearly independent integer vectors achieving the successive minima
/// of the cylinder gauge, sorted by gauge (ties broken lexicographically).
/// `gauges_out`, when non-null, receives the matching gauge enclosures.
std::vector<IntVec> successive_minima_points(const TransformStack& stack, int k,
                                             std::uint64_t budget,
                                             std::vector<Enclosure>* gauges_out = nullptr);

/// A nonzero integer vector strictly inside dilation * K_f(alpha, t), if
/// one exists; the returned vector has minimal gauge among candidates.
/// Throws NeedMorePrecision when membership of a potential witness cannot
/// be decided at the stack precision.
std::optional<IntVec> first_minimum_below_one(const TransformStack& stack,
                                              const Enclosure& dilation,
                                              std::uint64_t budget);

}  // namespace qapprox
