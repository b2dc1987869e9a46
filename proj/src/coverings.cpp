#include "fibercov/coverings.hpp"

#include "fibercov/error.hpp"

namespace fibercov {

namespace {

void require_same_bundles(const FiberwiseCovering& a, const FiberwiseCovering& b, const char* what)
{
    if (a.base().get() != b.base().get())
        throw Error(std::string(what) + ": coverings live over different bases");
    if (!(a.source() == b.source()) || !(a.target() == b.target()))
        throw Error(std::string(what) + ": coverings connect different (pinned) bundles");
}

void require_comparable(const FiberwiseCovering& a, const FiberwiseCovering& b, const char* what)
{
    require_same_bundles(a, b, what);
    if (a.sheets() != b.sheets())
        throw Error(std::string(what) + ": sheet counts differ (" + std::to_string(a.sheets()) + " vs " +
                    std::to_string(b.sheets()) + ")");
}

} // namespace

Cochain covering_obstruction(const CircleBundle& Q, const CircleBundle& P, long long n)
{
    if (Q.base().get() != P.base().get())
        throw Error("covering: source and target bundles live over different bases");
    return Q.euler_cocycle() * Integer(n) - P.euler_cocycle();
}

std::optional<std::size_t> first_covering_violation(const CircleBundle& Q, const CircleBundle& P, long long n,
                                                    const Cochain& c)
{
    if (c.degree() != 1 || c.complex().get() != Q.base().get())
        throw Error("covering: twist cochain must be a 1-cochain on the common base");
    const Cochain lhs = c.coboundary();
    const Cochain rhs = covering_obstruction(Q, P, n);
    for (std::size_t i = 0; i < lhs.values().size(); ++i)
        if (lhs[i] != rhs[i])
            return i;
    return std::nullopt;
}

FiberwiseCovering::FiberwiseCovering(CircleBundle source, CircleBundle target, long long sheets,
                                     Cochain twist_cochain)
    : source_(std::move(source)), target_(std::move(target)), sheets_(sheets), twist_(std::move(twist_cochain))
{
    if (sheets_ < 1)
        throw Error("FiberwiseCovering: sheets must be >= 1");
    if (auto bad = first_covering_violation(source_, target_, sheets_, twist_))
    {
        std::string s;
        for (int v : base()->simplex(2, *bad))
            s += (s.empty() ? "" : " ") + std::to_string(v);
        throw Error("FiberwiseCovering: delta c != n*e_Q - e_P on 2-simplex [" + s + "]");
    }
}

std::optional<FiberwiseCovering> exists_covering(const CircleBundle& Q, const CircleBundle& P, long long n)
{
    if (n < 1)
        throw Error("exists_covering: n must be >= 1");
    auto c = is_coboundary(covering_obstruction(Q, P, n));
    if (!c)
        return std::nullopt;
    return FiberwiseCovering(Q, P, n, std::move(*c));
}

Cochain distance_cocycle(const FiberwiseCovering& phi1, const FiberwiseCovering& phi2)
{
    require_comparable(phi1, phi2, "horizontal_distance");
    return phi2.twist_cochain() - phi1.twist_cochain();
}

CohomologyClass horizontal_distance(const FiberwiseCovering& phi1, const FiberwiseCovering& phi2)
{
    return coordinates_of_cocycle(distance_cocycle(phi1, phi2));
}

Integer distance_on_loop(const FiberwiseCovering& phi1, const FiberwiseCovering& phi2, const Chain& loop)
{
    return evaluate(distance_cocycle(phi1, phi2), loop);
}

bool homotopic(const FiberwiseCovering& phi1, const FiberwiseCovering& phi2)
{
    require_same_bundles(phi1, phi2, "homotopic");
    if (phi1.sheets() != phi2.sheets())
        return false;
    return horizontal_distance(phi1, phi2).is_zero();
}

bool isomorphic(const FiberwiseCovering& phi1, const FiberwiseCovering& phi2)
{
    require_same_bundles(phi1, phi2, "isomorphic");
    if (phi1.sheets() != phi2.sheets())
        return false;
    return is_multiple_class(distance_cocycle(phi1, phi2), Integer(phi1.sheets()));
}

FiberwiseCovering act(const Cochain& alpha, const FiberwiseCovering& phi)
{
    if (alpha.complex().get() != phi.base().get())
        throw Error("act: cocycle lives on a different base");
    if (alpha.degree() != 1 || !alpha.is_cocycle())
        throw Error("act: alpha must be a 1-cocycle");
    return FiberwiseCovering(phi.source(), phi.target(), phi.sheets(), phi.twist_cochain() + alpha);
}

FiberwiseCovering repin_source(const FiberwiseCovering& phi, const Cochain& u)
{
    return FiberwiseCovering(phi.source().repinned(u), phi.target(), phi.sheets(),
                             phi.twist_cochain() + u * Integer(phi.sheets()));
}

FiberwiseCovering repin_target(const FiberwiseCovering& phi, const Cochain& u)
{
    return FiberwiseCovering(phi.source(), phi.target().repinned(u), phi.sheets(), phi.twist_cochain() - u);
}

} // namespace fibercov
