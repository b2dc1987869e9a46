// Shared fixtures for the unit and acceptance tests.
#ifndef FIBERCOV_TESTS_SUPPORT_HPP
#define FIBERCOV_TESTS_SUPPORT_HPP

#include <array>
#include <cstdint>
#include <random>

#include "fibercov/engel.hpp"
#include "fibercov/error.hpp"

namespace testing_support {

using namespace fibercov;

inline std::mt19937_64& rng()
{
    static std::mt19937_64 engine(0x5eed2024ULL);
    return engine;
}

inline long long uniform(long long lo, long long hi)
{
    return std::uniform_int_distribution<long long>(lo, hi)(rng());
}

inline Cochain random_cochain(const ComplexPtr& X, int k, long long bound = 5)
{
    Cochain z(X, k);
    for (std::size_t i = 0; i < X->count(k); ++i)
        z[i] = uniform(-bound, bound);
    return z;
}

/// Random element of H^k as a cocycle: generator combination plus a coboundary.
inline Cochain random_cocycle(const ComplexPtr& X, int k, long long bound = 4)
{
    GroupPtr H = X->cohomology(k);
    Cochain z(X, k);
    for (const auto& g : H->all_generators())
        z = z + g * Integer(uniform(-bound, bound));
    if (k > 0)
        z = z + random_cochain(X, k - 1, 3).coboundary();
    return z;
}

inline Cochain combination(const std::vector<Cochain>& gens, const std::vector<long long>& coeffs)
{
    Cochain z(gens.front().complex(), gens.front().degree());
    for (std::size_t i = 0; i < gens.size(); ++i)
        z = z + gens[i] * Integer(coeffs[i]);
    return z;
}

/// The torus model phi_alpha: trivial bundles, n sheets, twist -sum alpha_j omega_j.
inline FiberwiseCovering torus_model(long long n, const std::array<long long, 3>& alpha)
{
    ComplexPtr T = builtin::torus3();
    Cochain c(T, 1);
    for (int j = 0; j < 3; ++j)
        c = c - builtin::torus_seam_cocycle(j) * Integer(alpha[j]);
    const CircleBundle triv = CircleBundle::trivial(T);
    return FiberwiseCovering(triv, triv, n, c);
}

inline std::array<long long, 3> random_alpha(long long bound)
{
    return {uniform(-bound, bound), uniform(-bound, bound), uniform(-bound, bound)};
}

inline long long to_ll(const Integer& v) { return v.convert_to<long long>(); }

} // namespace testing_support

#endif
