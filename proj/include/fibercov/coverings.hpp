/**
 * Fiberwise n-fold coverings between circle bundles over a common base.
 *
 * A homotopy class is modeled by (n, c) with c a 1-cochain satisfying
 * delta c = n * e_Q - e_P against the pinned Euler cocycles; c matters only
 * modulo coboundaries. For two coverings of the same bundles the
 * difference c2 - c1 is a cocycle, and its class is the horizontal distance.
 */
#ifndef FIBERCOV_COVERINGS_HPP
#define FIBERCOV_COVERINGS_HPP

#include <optional>

#include "fibercov/bundles.hpp"

namespace fibercov {

class FiberwiseCovering
{
public:
    /// Throws unless the bases agree, sheets >= 1 and delta c = n e_Q - e_P.
    FiberwiseCovering(CircleBundle source, CircleBundle target, long long sheets, Cochain twist_cochain);

    const CircleBundle& source() const { return source_; }
    const CircleBundle& target() const { return target_; }
    long long sheets() const { return sheets_; }
    const Cochain& twist_cochain() const { return twist_; }
    const ComplexPtr& base() const { return source_.base(); }

    bool operator==(const FiberwiseCovering& o) const = default;

private:
    CircleBundle source_;
    CircleBundle target_;
    long long sheets_;
    Cochain twist_;
};

/// n e_Q - e_P, the 2-cocycle a twist cochain must trivialize.
Cochain covering_obstruction(const CircleBundle& Q, const CircleBundle& P, long long n);

/// Index of the first 2-simplex where delta c != n e_Q - e_P, if any.
std::optional<std::size_t> first_covering_violation(const CircleBundle& Q, const CircleBundle& P, long long n,
                                                    const Cochain& c);

std::optional<FiberwiseCovering> exists_covering(const CircleBundle& Q, const CircleBundle& P, long long n);

/// The cocycle c2 - c1.
Cochain distance_cocycle(const FiberwiseCovering& phi1, const FiberwiseCovering& phi2);
CohomologyClass horizontal_distance(const FiberwiseCovering& phi1, const FiberwiseCovering& phi2);
Integer distance_on_loop(const FiberwiseCovering& phi1, const FiberwiseCovering& phi2, const Chain& loop);

bool homotopic(const FiberwiseCovering& phi1, const FiberwiseCovering& phi2);
/// Equal sheets n and horizontal distance in n * H^1.
bool isomorphic(const FiberwiseCovering& phi1, const FiberwiseCovering& phi2);

/// Twist cochain c + alpha; alpha must be a 1-cocycle on the same base.
FiberwiseCovering act(const Cochain& alpha, const FiberwiseCovering& phi);

/// Transport along e_Q -> e_Q + delta u (c -> c + n u).
FiberwiseCovering repin_source(const FiberwiseCovering& phi, const Cochain& u);
/// Transport along e_P -> e_P + delta u (c -> c - u).
FiberwiseCovering repin_target(const FiberwiseCovering& phi, const Cochain& u);

} // namespace fibercov

#endif
