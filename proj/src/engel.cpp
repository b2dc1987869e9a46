#include "fibercov/engel.hpp"

#include <sstream>

#include "fibercov/error.hpp"

namespace fibercov {

namespace {

int sign_of(long long tw)
{
    return tw < 0 ? -1 : 1;
}

long long magnitude(long long tw)
{
    return tw < 0 ? -tw : tw;
}

void require_nonzero(long long n, const char* what)
{
    if (n == 0)
        throw Error(std::string(what) + ": twisting number must be nonzero");
}

void require_same_base(const CircleBundle& Q, const ContactLabel& xi, const char* what)
{
    if (Q.base().get() != xi.base().get())
        throw Error(std::string(what) + ": bundle and contact label live over different bases");
}

void require_comparable(const EngelClass& a, const EngelClass& b, const char* what)
{
    if (!(a.bundle() == b.bundle()))
        throw Error(std::string(what) + ": Engel classes live on different (pinned) bundles");
    if (!a.contact().same_label(b.contact()))
        throw Error(std::string(what) + ": induced contact structures differ ('" + a.contact().name() + "' vs '" +
                    b.contact().name() + "')");
    if (a.tw() != b.tw())
        throw Error(std::string(what) + ": twisting numbers differ");
}

FiberwiseCovering development_covering(CircleBundle Q, const ContactLabel& xi, long long tw, Cochain c)
{
    require_nonzero(tw, "EngelClass");
    require_same_base(Q, xi, "EngelClass");
    return FiberwiseCovering(std::move(Q), prolongation_bundle(xi, sign_of(tw)), magnitude(tw), std::move(c));
}

std::string group_token(const CohomologyGroup& G)
{
    std::ostringstream os;
    os << "Z^" << G.free_rank();
    for (const auto& t : G.torsion_orders())
        os << "+Z_" << t;
    return os.str();
}

} // namespace

EngelClass::EngelClass(CircleBundle bundle, ContactLabel contact, long long tw, Cochain twist_cochain,
                       std::optional<Cochain> witness_cochain)
    : contact_(std::move(contact)),
      tw_(tw),
      covering_(development_covering(std::move(bundle), contact_, tw, std::move(twist_cochain)))
{
    if (!witness_cochain)
        return;
    if (tw_ % 2 != 0)
        throw Error("EngelClass: oriented witness given for odd twisting number");
    FiberwiseCovering half(covering_.source(), unit_sphere_bundle(contact_, sign_of(tw_)), magnitude(tw_) / 2,
                           std::move(*witness_cochain));
    // Composing with the double cover xi_1 -> P(xi) (twist cochain 0 for these pinnings) gives 2 c_half.
    const Cochain gap = covering_.twist_cochain() - half.twist_cochain() * Integer(2);
    if (!coordinates_of_cocycle(gap).is_zero())
        throw Error("EngelClass: oriented witness does not lift the development map");
    witness_ = OrientedWitness{std::move(half)};
}

EngelClass EngelClass::without_witness() const
{
    return EngelClass(bundle(), contact_, tw_, covering_.twist_cochain());
}

bool eng_nonempty(const CircleBundle& Q, const ContactLabel& xi, long long n)
{
    require_nonzero(n, "eng_nonempty");
    require_same_base(Q, xi, "eng_nonempty");
    return Q.euler_class() * Integer(n) == prolongation_euler(xi);
}

bool eng_oriented_nonempty(const CircleBundle& Q, const ContactLabel& xi, long long n)
{
    require_nonzero(n, "eng_oriented_nonempty");
    require_same_base(Q, xi, "eng_oriented_nonempty");
    if (n % 2 != 0)
        return false;
    return Q.euler_class() * Integer(n / 2) == unit_sphere_euler(xi);
}

std::optional<EngelClass> make_engel_class(const CircleBundle& Q, const ContactLabel& xi, long long n)
{
    require_nonzero(n, "make_engel_class");
    require_same_base(Q, xi, "make_engel_class");
    auto phi = exists_covering(Q, prolongation_bundle(xi, sign_of(n)), magnitude(n));
    if (!phi)
        return std::nullopt;
    return EngelClass(Q, xi, n, phi->twist_cochain());
}

std::optional<EngelClass> make_oriented_engel_class(const CircleBundle& Q, const ContactLabel& xi, long long n)
{
    require_nonzero(n, "make_oriented_engel_class");
    require_same_base(Q, xi, "make_oriented_engel_class");
    if (n % 2 != 0)
        return std::nullopt;
    auto half = exists_covering(Q, unit_sphere_bundle(xi, sign_of(n)), magnitude(n) / 2);
    if (!half)
        return std::nullopt;
    return EngelClass(Q, xi, n, half->twist_cochain() * Integer(2), half->twist_cochain());
}

CohomologyClass twist(const EngelClass& D, const EngelClass& D2)
{
    require_comparable(D, D2, "twist");
    return horizontal_distance(D.covering(), D2.covering());
}

bool isotopic(const EngelClass& D, const EngelClass& D2)
{
    if (!(D.bundle() == D2.bundle()))
        throw Error("isotopic: Engel classes live on different (pinned) bundles");
    if (D.tw() != D2.tw() || !D.contact().same_label(D2.contact()))
        return false;
    return twist(D, D2).is_zero();
}

EngelClass act_engel(const Cochain& alpha, const EngelClass& D)
{
    FiberwiseCovering moved = act(alpha, D.covering());
    return EngelClass(D.bundle(), D.contact(), D.tw(), moved.twist_cochain());
}

bool is_orientable_class(const EngelClass& D, const EngelClass& base_oriented)
{
    if (!base_oriented.witness())
        throw Error("is_orientable_class: base class carries no oriented witness");
    require_comparable(base_oriented, D, "is_orientable_class");
    return is_multiple_class(distance_cocycle(base_oriented.covering(), D.covering()), Integer(2));
}

std::vector<CohomologyClass> two_torsion_euler_classes(const ComplexPtr& M)
{
    GroupPtr H2 = M->cohomology(2);
    // One Z_2 factor per even torsion order t, generated by (t/2) * generator.
    std::vector<std::size_t> even;
    for (std::size_t i = 0; i < H2->torsion_orders().size(); ++i)
        if (H2->torsion_orders()[i] % 2 == 0)
            even.push_back(i);
    std::vector<CohomologyClass> out;
    for (std::size_t mask = 0; mask < (std::size_t(1) << even.size()); ++mask)
    {
        IntVector t(H2->torsion_orders().size());
        for (std::size_t b = 0; b < even.size(); ++b)
            if (mask & (std::size_t(1) << b))
                t[even[b]] = H2->torsion_orders()[even[b]] / 2;
        out.push_back(H2->make_class(IntVector(H2->free_rank()), std::move(t)));
    }
    return out;
}

Integer cosets_of_twice_h1(const ComplexPtr& M)
{
    GroupPtr H1 = M->cohomology(1);
    Integer k = Integer(1) << H1->free_rank();
    for (const auto& t : H1->torsion_orders())
        if (t % 2 == 0)
            k *= 2;
    return k;
}

std::string EnumerationRow::to_string() const
{
    std::ostringstream os;
    os << "n=" << n << " xi=" << xi << " admissible=" << (admissible ? "true" : "false") << " torsor=" << torsor
       << " oriented=" << (admissible ? (oriented ? "true" : "false") : "empty") << " cosets2H1=" << cosets;
    return os.str();
}

std::vector<EnumerationRow> enumerate_trivial_bundle(const CircleBundle& Q, const std::vector<long long>& tws,
                                                     const std::vector<ContactLabel>& labels)
{
    if (!Q.euler_class().is_zero())
        throw Error("enumerate_trivial_bundle: bundle has nonzero Euler class");
    const ComplexPtr& M = Q.base();
    const std::string torsor = group_token(*M->cohomology(1));
    const Integer cosets = cosets_of_twice_h1(M);
    std::vector<EnumerationRow> rows;
    for (long long n : tws)
    {
        require_nonzero(n, "enumerate_trivial_bundle");
        for (const auto& xi : labels)
        {
            EnumerationRow row;
            row.n = n;
            row.xi = xi.name();
            row.admissible = eng_nonempty(Q, xi, n);
            row.torsor = row.admissible ? torsor : "none";
            row.oriented = row.admissible && eng_oriented_nonempty(Q, xi, n);
            row.cosets = row.admissible ? cosets : Integer(0);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

} // namespace fibercov
