/**
 * Circle bundles over a simplicial base, modeled by a pinned integer Euler
 * 2-cocycle, and contact labels (a name plus a pinned Euler cocycle).
 */
#ifndef FIBERCOV_BUNDLES_HPP
#define FIBERCOV_BUNDLES_HPP

#include <string>

#include "fibercov/complex.hpp"

namespace fibercov {

class CircleBundle
{
public:
    /// Throws unless euler_cocycle is a degree-2 cocycle.
    explicit CircleBundle(Cochain euler_cocycle);

    static CircleBundle trivial(const ComplexPtr& base);

    const ComplexPtr& base() const { return euler_.complex(); }
    const Cochain& euler_cocycle() const { return euler_; }
    CohomologyClass euler_class() const;

    /// Same bundle with representative e + delta u.
    CircleBundle repinned(const Cochain& u) const;

    /// Identical base and identical pinned cocycle.
    bool operator==(const CircleBundle& o) const { return euler_ == o.euler_; }

private:
    Cochain euler_;
};

CohomologyClass euler_class(const CircleBundle& B);
/// Throws if the bases differ.
bool bundles_isomorphic(const CircleBundle& a, const CircleBundle& b);

/**
 * Stand-in for a contact structure on the base. It enters the
 * classification only through its Euler class and its identity (the name).
 */
class ContactLabel
{
public:
    ContactLabel(std::string name, Cochain euler_cocycle);
    /// Pins the group's canonical representative of the class.
    static ContactLabel from_class(std::string name, const CohomologyClass& e);

    const std::string& name() const { return name_; }
    const ComplexPtr& base() const { return euler_.complex(); }
    const Cochain& euler_cocycle() const { return euler_; }
    CohomologyClass euler_class() const;

    /// Same name; throws if the names agree but the pinned data do not.
    bool same_label(const ContactLabel& o) const;
    bool operator==(const ContactLabel& o) const { return name_ == o.name_ && euler_ == o.euler_; }

private:
    std::string name_;
    Cochain euler_;
};

/// e(P xi) = 2 e(xi).
CohomologyClass prolongation_euler(const ContactLabel& xi);
/// e(xi_1) = e(xi).
CohomologyClass unit_sphere_euler(const ContactLabel& xi);

/// Prolongation bundle pinned at sign * 2 * e_xi (sign = +1 or -1).
CircleBundle prolongation_bundle(const ContactLabel& xi, int sign = 1);
/// Unit-sphere bundle pinned at sign * e_xi.
CircleBundle unit_sphere_bundle(const ContactLabel& xi, int sign = 1);

} // namespace fibercov

#endif
