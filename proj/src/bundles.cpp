#include "fibercov/bundles.hpp"

#include "fibercov/error.hpp"

namespace fibercov {

CircleBundle::CircleBundle(Cochain euler_cocycle)
    : euler_(std::move(euler_cocycle))
{
    if (euler_.degree() != 2)
        throw Error("CircleBundle: Euler cochain must have degree 2");
    if (!euler_.is_cocycle())
        throw Error("CircleBundle: Euler cochain is not a cocycle");
}

CircleBundle CircleBundle::trivial(const ComplexPtr& base)
{
    return CircleBundle(Cochain(base, 2));
}

CohomologyClass CircleBundle::euler_class() const
{
    return coordinates_of_cocycle(euler_);
}

CircleBundle CircleBundle::repinned(const Cochain& u) const
{
    if (u.degree() != 1)
        throw Error("repinned: shift must be a 1-cochain");
    return CircleBundle(euler_ + u.coboundary());
}

CohomologyClass euler_class(const CircleBundle& B)
{
    return B.euler_class();
}

bool bundles_isomorphic(const CircleBundle& a, const CircleBundle& b)
{
    if (a.base().get() != b.base().get())
        throw Error("bundles_isomorphic: bundles live over different bases");
    return a.euler_class() == b.euler_class();
}

ContactLabel::ContactLabel(std::string name, Cochain euler_cocycle)
    : name_(std::move(name)), euler_(std::move(euler_cocycle))
{
    if (name_.empty())
        throw Error("ContactLabel: empty name");
    if (euler_.degree() != 2 || !euler_.is_cocycle())
        throw Error("ContactLabel: Euler data must be a degree-2 cocycle");
}

ContactLabel ContactLabel::from_class(std::string name, const CohomologyClass& e)
{
    if (e.group()->degree() != 2)
        throw Error("ContactLabel: Euler class must have degree 2");
    return ContactLabel(std::move(name), e.group()->representative(e));
}

CohomologyClass ContactLabel::euler_class() const
{
    return coordinates_of_cocycle(euler_);
}

bool ContactLabel::same_label(const ContactLabel& o) const
{
    if (name_ != o.name_)
        return false;
    if (!(euler_ == o.euler_))
        throw Error("contact label '" + name_ + "' is used with two different Euler cocycles");
    return true;
}

CohomologyClass prolongation_euler(const ContactLabel& xi)
{
    return xi.euler_class() * Integer(2);
}

CohomologyClass unit_sphere_euler(const ContactLabel& xi)
{
    return xi.euler_class();
}

CircleBundle prolongation_bundle(const ContactLabel& xi, int sign)
{
    if (sign != 1 && sign != -1)
        throw Error("prolongation_bundle: sign must be +1 or -1");
    return CircleBundle(xi.euler_cocycle() * Integer(2 * sign));
}

CircleBundle unit_sphere_bundle(const ContactLabel& xi, int sign)
{
    if (sign != 1 && sign != -1)
        throw Error("unit_sphere_bundle: sign must be +1 or -1");
    return CircleBundle(xi.euler_cocycle() * Integer(sign));
}

} // namespace fibercov
