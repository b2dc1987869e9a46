/**
 * Isotopy classification of Engel structures whose characteristic line
 * field is tangent to the fibers of a circle bundle Q over a contact
 * 3-manifold (M, xi).
 *
 * An isotopy class is represented by its development map: a fiberwise
 * |tw|-fold covering Q -> P(xi). Negative twisting numbers are folded into
 * the target's pinned Euler cocycle, sign(tw) * 2 * e_xi.
 */
#ifndef FIBERCOV_ENGEL_HPP
#define FIBERCOV_ENGEL_HPP

#include <optional>
#include <string>
#include <vector>

#include "fibercov/coverings.hpp"

namespace fibercov {

/// Lift of the development map to the unit-sphere bundle xi_1.
struct OrientedWitness
{
    FiberwiseCovering half_covering;
};

class EngelClass
{
public:
    /**
     * Throws if tw == 0, if the covering equation fails, or if a witness is
     * supplied that does not lift this class (tw odd, bad half covering, or
     * c - 2 c_half not a coboundary).
     */
    EngelClass(CircleBundle bundle, ContactLabel contact, long long tw, Cochain twist_cochain,
               std::optional<Cochain> witness_cochain = std::nullopt);

    const CircleBundle& bundle() const { return covering_.source(); }
    const ContactLabel& contact() const { return contact_; }
    long long tw() const { return tw_; }
    const FiberwiseCovering& covering() const { return covering_; }
    const std::optional<OrientedWitness>& witness() const { return witness_; }

    /// Same class data with the witness dropped.
    EngelClass without_witness() const;

private:
    ContactLabel contact_;
    long long tw_;
    FiberwiseCovering covering_;
    std::optional<OrientedWitness> witness_;
};

/// n e(Q) = 2 e(xi).
bool eng_nonempty(const CircleBundle& Q, const ContactLabel& xi, long long n);
/// n even and (n/2) e(Q) = e(xi).
bool eng_oriented_nonempty(const CircleBundle& Q, const ContactLabel& xi, long long n);

std::optional<EngelClass> make_engel_class(const CircleBundle& Q, const ContactLabel& xi, long long n);
/// A class carrying an oriented witness, when the oriented subset is nonempty.
std::optional<EngelClass> make_oriented_engel_class(const CircleBundle& Q, const ContactLabel& xi, long long n);

CohomologyClass twist(const EngelClass& D, const EngelClass& D2);
bool isotopic(const EngelClass& D, const EngelClass& D2);
EngelClass act_engel(const Cochain& alpha, const EngelClass& D);

/// twist(base, D) in 2 H^1; `base` must carry an oriented witness.
bool is_orientable_class(const EngelClass& D, const EngelClass& base_oriented);

/// All x in H^2(M) with 2x = 0.
std::vector<CohomologyClass> two_torsion_euler_classes(const ComplexPtr& M);

/// Number of cosets of 2 H^1 in H^1: 2^r times 2 per even torsion order.
Integer cosets_of_twice_h1(const ComplexPtr& M);

struct EnumerationRow
{
    long long n = 0;
    std::string xi;
    bool admissible = false;
    std::string torsor;   // "Z^r" or "Z^r+Z_t..." when admissible, "none" otherwise
    bool oriented = false; // meaningful only when admissible
    Integer cosets;        // |H^1 / 2H^1| when admissible, 0 otherwise

    /// n=<n> xi=<name> admissible=<bool> torsor=<group> oriented=<bool|empty> cosets2H1=<k>
    std::string to_string() const;
};

/// Throws unless Q has vanishing Euler class.
std::vector<EnumerationRow> enumerate_trivial_bundle(const CircleBundle& Q, const std::vector<long long>& tws,
                                                     const std::vector<ContactLabel>& labels);

} // namespace fibercov

#endif
