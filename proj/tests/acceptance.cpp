// End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero exit
// if any criterion fails.
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fibercov/coverings.hpp"
#include "fibercov/engel.hpp"
#include "fibercov/engel_numeric.hpp"
#include "support.hpp"

using namespace fibercov;
using namespace testing_support;
namespace num = fibercov::numeric;

namespace {

// Thrown by check() to abort a criterion with a reason.
struct Failure
{
    std::string what;
};

void check(bool ok, const std::string& what)
{
    if (!ok)
        throw Failure{what};
}

template <typename T>
std::string str(const T& v)
{
    std::ostringstream s;
    s << v;
    return s.str();
}

std::string triple(const std::array<long long, 3>& a)
{
    return "(" + str(a[0]) + "," + str(a[1]) + "," + str(a[2]) + ")";
}

struct Criterion
{
    int id;
    std::string name;
    double budget_seconds; // 0 means no time limit
    std::function<std::string()> body; // returns a short summary
};

bool run(const Criterion& c)
{
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try
    {
        detail = c.body();
    }
    catch (const Failure& f)
    {
        ok = false;
        detail = f.what;
    }
    catch (const std::exception& e)
    {
        ok = false;
        detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && c.budget_seconds > 0 && secs > c.budget_seconds)
    {
        ok = false;
        detail += "; over time budget of " + str(c.budget_seconds) + " s";
    }
    std::ostringstream t;
    t.precision(3);
    t << std::fixed << secs;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " [" << t.str() << " s] "
              << detail << std::endl;
    return ok;
}

// A cocycle for the class with the given coordinates, disguised by a coboundary.
Cochain disguised(const GroupPtr& H, const ComplexPtr& X, int k, IntVector free, IntVector torsion = {})
{
    return H->representative(H->make_class(std::move(free), std::move(torsion))) +
           random_cochain(X, k - 1, 2).coboundary();
}

// Bundles over T^3 and RP^3 with Euler coordinates in [-2, 2], tagged by those
// coordinates so the class equation can be decided without the library.
struct SweepBundle
{
    CircleBundle bundle;
    std::vector<long long> coords;
};

std::vector<SweepBundle> torus_sweep()
{
    ComplexPtr T = builtin::torus3();
    GroupPtr H2 = T->cohomology(2);
    std::vector<SweepBundle> out;
    for (long long a = -2; a <= 2; ++a)
        for (long long b = -2; b <= 2; ++b)
            for (long long c = -2; c <= 2; ++c)
                out.push_back({CircleBundle(disguised(H2, T, 2, {a, b, c})), {a, b, c}});
    return out;
}

std::vector<SweepBundle> rp3_sweep()
{
    ComplexPtr R = builtin::rp3();
    GroupPtr H2 = R->cohomology(2);
    std::vector<SweepBundle> out;
    for (long long t = -2; t <= 2; ++t)
        out.push_back({CircleBundle(disguised(H2, R, 2, {}, {((t % 2) + 2) % 2})), {t}});
    return out;
}

// n x = y, on Z^3 coordinates or Z_2 coordinates.
bool torus_equation(long long n, const std::vector<long long>& x, const std::vector<long long>& y)
{
    for (std::size_t i = 0; i < x.size(); ++i)
        if (n * x[i] != y[i])
            return false;
    return true;
}

bool rp3_equation(long long n, long long x, long long y) { return ((n * x - y) % 2 + 2) % 2 == 0; }

std::string cohomology_sanity()
{
    const std::vector<std::pair<ComplexPtr, std::vector<std::string>>> cases{
        {builtin::torus3(), {"Z^1", "Z^3", "Z^3", "Z^1"}},
        {builtin::rp3(), {"Z^1", "Z^0", "Z^0 + Z_2", "Z^1"}},
    };
    for (const auto& [X, expected] : cases)
        for (int k = 0; k <= 3; ++k)
        {
            const std::string got = X->cohomology(k)->describe();
            check(got == expected[k], "H^" + str(k) + " = " + got + ", expected " + expected[k]);
        }
    return "T^3: Z, Z^3, Z^3, Z; RP^3: Z, 0, Z_2, Z";
}

std::string torus_distance()
{
    const FiberwiseCovering phi0 = torus_model(1, {0, 0, 0});
    for (int trial = 0; trial < 50; ++trial)
    {
        const auto alpha = random_alpha(5);
        const FiberwiseCovering phi = torus_model(1, alpha);
        for (int i = 0; i < 3; ++i)
        {
            const long long d = to_ll(distance_on_loop(phi, phi0, builtin::torus_loop(i)));
            check(d == alpha[i], "d(phi_alpha, phi_0) on loop " + str(i + 1) + " = " + str(d) + " for alpha " +
                                     triple(alpha));
            const long long w = num::development_winding(alpha, {0, 0, 0}, i + 1);
            check(w == alpha[i], "development winding " + str(w) + " for alpha " + triple(alpha));
        }
    }
    return "50 random alpha in [-5,5]^3";
}

std::string torsor_suite()
{
    int pairs = 0;
    for (const ComplexPtr& X : {builtin::torus3(), builtin::rp3()})
    {
        GroupPtr H2 = X->cohomology(2);
        for (int trial = 0; trial < 50; ++trial, ++pairs)
        {
            const long long n = uniform(1, 4);
            const CircleBundle Q(random_cocycle(X, 2, 2));
            const CohomologyClass eP = Q.euler_class() * Integer(n);
            const CircleBundle P(H2->representative(eP) + random_cochain(X, 1, 2).coboundary());
            const auto base = exists_covering(Q, P, n);
            check(base.has_value(), "no covering for n e(Q) = e(P)");

            const Cochain a = random_cocycle(X, 1, 3), b = random_cocycle(X, 1, 3);
            const FiberwiseCovering p1 = act(a, *base), p2 = act(b, *base), p3 = act(a + b, *base);
            // Additivity and antisymmetry.
            check(horizontal_distance(p1, p2) + horizontal_distance(p2, p3) == horizontal_distance(p1, p3),
                  "additivity");
            check(horizontal_distance(p1, p2) == -horizontal_distance(p2, p1), "antisymmetry");
            check(horizontal_distance(p1, p1).is_zero(), "d(phi, phi) != 0");
            // Freeness: acting moves the class by exactly [alpha].
            const Cochain alpha = random_cocycle(X, 1, 3);
            const FiberwiseCovering moved = act(alpha, p1);
            check(horizontal_distance(p1, moved) == coordinates_of_cocycle(alpha), "d(phi, alpha.phi) != [alpha]");
            check(homotopic(moved, p1) == coordinates_of_cocycle(alpha).is_zero(), "freeness");
            // Transitivity: the distance carries p1 onto p2.
            check(homotopic(act(distance_cocycle(p1, p2), p1), p2), "transitivity");
            check(homotopic(act(random_cochain(X, 0, 3).coboundary(), p2), p2), "coboundary action moved class");
        }
    }
    return str(pairs) + " random pairs";
}

std::string existence_sweep()
{
    long long checked = 0, found = 0;
    const auto T = torus_sweep();
    for (const auto& Q : T)
        for (const auto& P : T)
            for (long long n = 1; n <= 6; ++n)
            {
                const bool expected = torus_equation(n, Q.coords, P.coords);
                const auto phi = exists_covering(Q.bundle, P.bundle, n);
                check(phi.has_value() == expected, "T^3 existence mismatch at n = " + str(n));
                if (phi)
                {
                    const Cochain residual = phi->twist_cochain().coboundary() -
                                             covering_obstruction(Q.bundle, P.bundle, n);
                    check(residual.is_zero(), "T^3 witness fails delta c = n e_Q - e_P");
                    ++found;
                }
                ++checked;
            }
    const auto R = rp3_sweep();
    for (const auto& Q : R)
        for (const auto& P : R)
            for (long long n = 1; n <= 6; ++n)
            {
                const bool expected = rp3_equation(n, Q.coords[0], P.coords[0]);
                const auto phi = exists_covering(Q.bundle, P.bundle, n);
                check(phi.has_value() == expected, "RP^3 existence mismatch at n = " + str(n));
                found += phi.has_value();
                ++checked;
            }
    // tau -> tau: degree 2 impossible, degree 3 possible.
    const CircleBundle tau(disguised(builtin::rp3()->cohomology(2), builtin::rp3(), 2, {}, {1}));
    check(!exists_covering(tau, tau, 2), "RP^3 tau -> tau of degree 2 exists");
    check(exists_covering(tau, tau, 3).has_value(), "RP^3 tau -> tau of degree 3 missing");
    return str(checked) + " triples, " + str(found) + " coverings; RP^3 tau: n=2 none, n=3 exists";
}

std::string isomorphism_criterion()
{
    ComplexPtr T = builtin::torus3();
    GroupPtr H1 = T->cohomology(1);
    // Loop values of the H^1 generators, for the exhaustive oracle search.
    std::array<std::array<long long, 3>, 3> gen_on_loop{};
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i)
            gen_on_loop[j][i] = to_ll(evaluate(H1->free_generator(j), builtin::torus_loop(i)));

    long long iso = 0, total = 0;
    for (long long n = 1; n <= 4; ++n)
    {
        const FiberwiseCovering phi0 = torus_model(n, {0, 0, 0});
        for (long long x = -6; x <= 6; ++x)
            for (long long y = -6; y <= 6; ++y)
                for (long long z = -6; z <= 6; ++z)
                {
                    const std::array<long long, 3> d{x, y, z};
                    const FiberwiseCovering phi = torus_model(n, d);
                    const bool divisible = x % n == 0 && y % n == 0 && z % n == 0;
                    const bool verdict = isomorphic(phi, phi0);
                    check(verdict == divisible, "isomorphic mismatch at n = " + str(n) + ", d = " + triple(d));

                    // Oracle: search psi = sum b_j g_j with b in [-6,6]^3 such that
                    // dist - n psi vanishes on every loop, then confirm at cochain level.
                    const Cochain dist = distance_cocycle(phi0, phi);
                    std::array<long long, 3> on_loop{};
                    for (int i = 0; i < 3; ++i)
                        on_loop[i] = to_ll(evaluate(dist, builtin::torus_loop(i)));
                    std::optional<std::array<long long, 3>> hit;
                    for (long long b0 = -6; b0 <= 6 && !hit; ++b0)
                        for (long long b1 = -6; b1 <= 6 && !hit; ++b1)
                            for (long long b2 = -6; b2 <= 6 && !hit; ++b2)
                            {
                                bool zero = true;
                                for (int i = 0; i < 3 && zero; ++i)
                                    zero = on_loop[i] ==
                                           n * (b0 * gen_on_loop[0][i] + b1 * gen_on_loop[1][i] +
                                                b2 * gen_on_loop[2][i]);
                                if (zero)
                                    hit = std::array<long long, 3>{b0, b1, b2};
                            }
                    check(hit.has_value() == verdict, "oracle disagrees at n = " + str(n) + ", d = " + triple(d));
                    if (hit)
                    {
                        const Cochain psi = combination(
                            {H1->free_generator(0), H1->free_generator(1), H1->free_generator(2)},
                            {(*hit)[0], (*hit)[1], (*hit)[2]});
                        check(is_coboundary(dist - psi * Integer(n)).has_value(),
                              "oracle witness is not a coboundary at d = " + triple(d));
                    }
                    iso += verdict;
                    ++total;
                }
    }
    return str(total) + " cases, " + str(iso) + " isomorphic";
}

std::string engel_existence()
{
    long long checked = 0;
    ComplexPtr T = builtin::torus3();
    const auto TQ = torus_sweep();
    for (const auto& Q : TQ)
        for (const auto& X : TQ)
        {
            const ContactLabel xi("xi", X.bundle.euler_cocycle());
            std::vector<long long> twice{2 * X.coords[0], 2 * X.coords[1], 2 * X.coords[2]};
            for (long long n = 1; n <= 6; ++n)
            {
                const bool any = torus_equation(n, Q.coords, twice);
                const bool oriented = n % 2 == 0 && torus_equation(n / 2, Q.coords, X.coords);
                check(eng_nonempty(Q.bundle, xi, n) == any, "T^3 Eng nonempty mismatch at n = " + str(n));
                check(eng_oriented_nonempty(Q.bundle, xi, n) == oriented, "T^3 oriented mismatch at n = " + str(n));
                check(make_engel_class(Q.bundle, xi, n).has_value() == any, "T^3 constructor disagrees");
                ++checked;
            }
        }
    const auto RQ = rp3_sweep();
    for (const auto& Q : RQ)
        for (const auto& X : RQ)
        {
            const ContactLabel xi("xi", X.bundle.euler_cocycle());
            for (long long n = 1; n <= 6; ++n)
            {
                // 2 e(xi) = 0 in Z_2, so Eng is nonempty iff n e(Q) = 0.
                const bool any = rp3_equation(n, Q.coords[0], 0);
                const bool oriented = n % 2 == 0 && rp3_equation(n / 2, Q.coords[0], X.coords[0]);
                check(eng_nonempty(Q.bundle, xi, n) == any, "RP^3 Eng nonempty mismatch at n = " + str(n));
                check(eng_oriented_nonempty(Q.bundle, xi, n) == oriented, "RP^3 oriented mismatch at n = " + str(n));
                ++checked;
            }
        }
    // Trivial Q, e(xi) = tau: every n admits classes, none oriented.
    const CircleBundle Q = CircleBundle::trivial(builtin::rp3());
    const ContactLabel tau = ContactLabel::from_class("tau", builtin::rp3()->cohomology(2)->make_class({}, {1}));
    for (long long n = 1; n <= 6; ++n)
    {
        check(eng_nonempty(Q, tau, n), "RP^3 tau: Eng empty at n = " + str(n));
        check(!eng_oriented_nonempty(Q, tau, n), "RP^3 tau: oriented nonempty at n = " + str(n));
        check(!make_oriented_engel_class(Q, tau, n), "RP^3 tau: oriented class constructed");
    }
    return str(checked) + " (Q, xi, n) triples; RP^3 tau nonempty for all n, oriented empty";
}

std::string orientability_coset()
{
    ComplexPtr T = builtin::torus3();
    GroupPtr H1 = T->cohomology(1);
    check(cosets_of_twice_h1(T) == 8, "|H^1 / 2H^1| = " + to_string(cosets_of_twice_h1(T)));
    const Cochain g1 = H1->free_generator(0);
    const CircleBundle Q = CircleBundle::trivial(T);
    const ContactLabel xi = ContactLabel::from_class("xi", T->cohomology(2)->zero());
    for (long long n : {2LL, 4LL, -2LL})
    {
        const auto base = make_oriented_engel_class(Q, xi, n);
        check(base.has_value(), "no oriented class for n = " + str(n));
        // One representative per coset of 2 H^1.
        std::vector<EngelClass> reps;
        for (int mask = 0; mask < 8; ++mask)
        {
            Cochain shift(T, 1);
            for (int j = 0; j < 3; ++j)
                if (mask & (1 << j))
                    shift = shift + H1->free_generator(j);
            reps.push_back(act_engel(shift + random_cocycle(T, 1, 3) * Integer(2), *base));
        }
        int oriented = 0;
        for (std::size_t a = 0; a < reps.size(); ++a)
        {
            for (std::size_t b = a + 1; b < reps.size(); ++b)
            {
                const IntVector t = twist(reps[a], reps[b]).free_coords();
                bool even = true;
                for (const auto& v : t)
                    even = even && mod_nonneg(v, 2) == 0;
                check(!even, "two representatives share a coset of 2H^1");
            }
            oriented += is_orientable_class(reps[a], *base);
        }
        check(oriented == 1, str(oriented) + " oriented cosets for n = " + str(n));

        // g1 swaps the oriented coset with the g1 coset; elsewhere both sides are
        // unoriented. 2 g1 never changes anything.
        for (int trial = 0; trial < 20; ++trial)
        {
            const Cochain even = random_cocycle(T, 1, 4) * Integer(2);
            for (const EngelClass& D : {act_engel(even, *base), act_engel(even + g1, *base)})
            {
                const bool o = is_orientable_class(D, *base);
                check(is_orientable_class(act_engel(g1, D), *base) != o, "g1 did not flip orientability");
                check(is_orientable_class(act_engel(-g1, D), *base) != o, "-g1 did not flip orientability");
            }
            const EngelClass D = act_engel(random_cocycle(T, 1, 4), *base);
            const bool o = is_orientable_class(D, *base);
            check(is_orientable_class(act_engel(g1 * Integer(2), D), *base) == o, "2 g1 changed orientability");
        }
    }
    return "8 cosets, 1 oriented, for n in {2, 4, -2}";
}

std::string enumeration()
{
    ComplexPtr T = builtin::torus3();
    GroupPtr H2 = T->cohomology(2);
    std::vector<ContactLabel> labels{ContactLabel::from_class("0", H2->zero())};
    for (std::size_t j = 0; j < 3; ++j)
        labels.push_back(ContactLabel("g" + str(j + 1), H2->free_generator(j)));
    const std::vector<long long> tws{-4, -3, -2, -1, 1, 2, 3, 4};
    std::size_t rows = 0;
    for (const auto& row : enumerate_trivial_bundle(CircleBundle::trivial(T), tws, labels))
    {
        ++rows;
        check(row.admissible == (row.xi == "0"), "T^3 admissibility: " + row.to_string());
        if (row.admissible)
        {
            check(row.torsor == "Z^3", "T^3 torsor: " + row.to_string());
            check(row.oriented == (row.n % 2 == 0), "T^3 orientation: " + row.to_string());
            check(row.cosets == 8, "T^3 cosets: " + row.to_string());
        }
    }
    check(rows == tws.size() * labels.size(), "T^3 row count");

    ComplexPtr R = builtin::rp3();
    GroupPtr R2 = R->cohomology(2);
    const std::vector<ContactLabel> rlabels{ContactLabel::from_class("0", R2->zero()),
                                            ContactLabel::from_class("tau", R2->make_class({}, {1}))};
    rows = 0;
    for (const auto& row : enumerate_trivial_bundle(CircleBundle::trivial(R), tws, rlabels))
    {
        ++rows;
        check(row.admissible, "RP^3 admissibility: " + row.to_string());
        check(row.torsor == "Z^0", "RP^3 torsor: " + row.to_string());
        check(row.oriented == (row.xi == "0" && row.n % 2 == 0), "RP^3 orientation: " + row.to_string());
    }
    check(rows == tws.size() * rlabels.size(), "RP^3 row count");
    return "T^3: {0} admissible, Z^3, oriented iff n even; RP^3: {0, tau}, oriented iff xi = 0 and n even";
}

std::string numeric_verification()
{
    const double pi = std::acos(-1.0);
    const std::vector<std::array<long long, 3>> alphas{{0, 0, 0}, {1, 0, 0}, {2, -1, 3}};
    double worst = 1;
    for (long long n : {1LL, 2LL, 3LL})
        for (const auto& alpha : alphas)
        {
            const auto report = num::verify_engel({n, alpha}, 1000, 2024 + n);
            check(report.points.size() == 1000, "sample count");
            for (const auto& p : report.points)
                check(p.ranks == std::array<int, 3>{2, 3, 4}, "rank profile off for n = " + str(n));
            check(report.pass, "report failed for n = " + str(n) + ", alpha " + triple(alpha));
            check(report.min_sv_ratio > 1e-4, "min ratio " + num::format_real(report.min_sv_ratio));
            worst = std::min(worst, report.min_sv_ratio);
        }
    const auto flat = num::verify_engel({0, {1, 0, 0}}, 1000, 2024);
    check(!flat.pass, "n = 0 passed");
    for (const auto& p : flat.points)
        check(p.ranks[0] == 2 && p.ranks[1] == 2, "n = 0 did not stall at stage 2");

    for (const auto& p : num::sample_points(1000, 99))
        check(std::abs(num::contact_defect(p) - 2 * pi) < 1e-9, "contact defect off 2 pi");

    for (const auto& a : alphas)
        for (const auto& b : alphas)
            for (int i = 1; i <= 3; ++i)
            {
                const auto m = num::twist_numeric({2, a}, {2, b}, i);
                check(m.twist == a[i - 1] - b[i - 1], "twist_numeric " + str(m.twist) + " on loop " + str(i));
                check(m.residual < 1e-6, "unwrap residual " + num::format_real(m.residual));
            }
    return "9 families x 1000 samples, min ratio " + num::format_real(worst) + "; n = 0 stalls at stage 2";
}

std::string cross_model()
{
    for (int trial = 0; trial < 50; ++trial)
    {
        const long long n = uniform(1, 3);
        const auto a = random_alpha(5), b = random_alpha(5);
        const FiberwiseCovering pa = torus_model(n, a), pb = torus_model(n, b);
        for (int i = 1; i <= 3; ++i)
        {
            const long long comb = to_ll(distance_on_loop(pa, pb, builtin::torus_loop(i - 1)));
            const long long dev = num::development_winding(a, b, i);
            const long long numer = num::twist_numeric({n, a}, {n, b}, i).twist;
            check(comb == dev && dev == numer, "disagreement " + str(comb) + "/" + str(dev) + "/" + str(numer) +
                                                   " for " + triple(a) + " vs " + triple(b));
        }
    }
    return "50 random pairs, 3 loops each";
}

} // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {1, "cohomology of T^3 and RP^3", 5, cohomology_sanity},
        {2, "torus distance and development winding", 5, torus_distance},
        {3, "H^1 torsor laws for coverings", 0, torsor_suite},
        {4, "covering existence iff n e(Q) = e(P)", 60, existence_sweep},
        {5, "isomorphism iff distance divisible by n", 0, isomorphism_criterion},
        {6, "Engel existence and oriented existence", 0, engel_existence},
        {7, "orientability cosets of 2 H^1", 0, orientability_coset},
        {8, "trivial-bundle enumeration", 0, enumeration},
        {9, "numeric Engel verification", 30, numeric_verification},
        {10, "combinatorial, analytic and numeric twist agree", 0, cross_model},
    };
    int failed = 0;
    for (const auto& c : criteria)
        failed += !run(c);
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
