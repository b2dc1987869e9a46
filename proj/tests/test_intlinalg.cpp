#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <numeric>

#include "fibercov/intlinalg.hpp"
#include "support.hpp"

using namespace fibercov;
using testing_support::uniform;

namespace {

using Small = std::vector<std::vector<long long>>;

IntMatrix from_small(const Small& a, std::size_t rows, std::size_t cols)
{
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = a[i][j];
    return m;
}

Small random_small(std::size_t rows, std::size_t cols, long long bound = 9)
{
    Small a(rows, std::vector<long long>(cols));
    for (auto& r : a)
        for (auto& v : r)
            v = uniform(-bound, bound);
    // Sprinkle rank deficiency and zero rows so degenerate shapes get exercised.
    if (rows > 1 && uniform(0, 3) == 0)
        a[rows - 1] = a[0];
    if (uniform(0, 7) == 0)
        a[0].assign(cols, 0);
    return a;
}

// Laplace expansion; independent of the Bareiss code under test.
long long laplace(const Small& m)
{
    const std::size_t n = m.size();
    if (n == 1)
        return m[0][0];
    long long det = 0;
    for (std::size_t j = 0; j < n; ++j)
    {
        if (m[0][j] == 0)
            continue;
        Small minor;
        for (std::size_t i = 1; i < n; ++i)
        {
            std::vector<long long> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j)
                    row.push_back(m[i][c]);
            minor.push_back(row);
        }
        det += (j % 2 ? -1 : 1) * m[0][j] * laplace(minor);
    }
    return det;
}

void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out)
{
    std::vector<std::size_t> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (cur.size() == k)
        {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < n; ++i)
        {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
}

/// k-th determinantal divisor: gcd of all k x k minors.
long long determinantal_divisor(const Small& a, std::size_t k)
{
    std::vector<std::vector<std::size_t>> rs, cs;
    subsets(a.size(), k, rs);
    subsets(a[0].size(), k, cs);
    long long g = 0;
    for (const auto& r : rs)
        for (const auto& c : cs)
        {
            Small m(k, std::vector<long long>(k));
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j)
                    m[i][j] = a[r[i]][c[j]];
            g = std::gcd(g, std::llabs(laplace(m)));
        }
    return g;
}

void check_decomposition(const IntMatrix& A, const SmithDecomposition& d)
{
    REQUIRE(d.U * A * d.V == d.S);
    REQUIRE(d.U * d.U_inv == IntMatrix::identity(A.rows()));
    REQUIRE(d.V * d.V_inv == IntMatrix::identity(A.cols()));
    REQUIRE(abs(d.U.determinant()) == 1);
    REQUIRE(abs(d.V.determinant()) == 1);
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j)
            if (i != j)
                REQUIRE(d.S(i, j) == 0);
    const auto f = d.invariant_factors();
    REQUIRE(f.size() == d.rank);
    for (std::size_t i = 0; i < f.size(); ++i)
    {
        REQUIRE(f[i] > 0);
        if (i + 1 < f.size())
            REQUIRE(f[i + 1] % f[i] == 0);
    }
    for (std::size_t i = d.rank; i < std::min(A.rows(), A.cols()); ++i)
        REQUIRE(d.S(i, i) == 0);
}

} // namespace

TEST_CASE("smith form of small fixed matrices")
{
    SECTION("zero 1x1")
    {
        const auto d = smith_normal_form(IntMatrix{{0}});
        CHECK(d.S == IntMatrix{{0}});
        CHECK(d.U == IntMatrix{{1}});
        CHECK(d.V == IntMatrix{{1}});
        CHECK(d.rank == 0);
    }
    SECTION("identity")
    {
        const auto d = smith_normal_form(IntMatrix::identity(3));
        CHECK(d.S == IntMatrix::identity(3));
    }
    SECTION("2 4 / 6 8")
    {
        const IntMatrix A{{2, 4}, {6, 8}};
        const auto d = smith_normal_form(A);
        CHECK(d.S == IntMatrix{{2, 0}, {0, 4}});
        // gcd of entries, then |det| / d1
        CHECK(determinantal_divisor({{2, 4}, {6, 8}}, 1) == 2);
        CHECK(determinantal_divisor({{2, 4}, {6, 8}}, 2) == 8);
        check_decomposition(A, d);
    }
    SECTION("empty shapes")
    {
        const auto d = smith_normal_form(IntMatrix(0, 3));
        CHECK(d.rank == 0);
        CHECK(d.V == IntMatrix::identity(3));
        const auto e = smith_normal_form(IntMatrix(2, 0));
        CHECK(e.U == IntMatrix::identity(2));
    }
}

TEST_CASE("smith form matches determinantal divisors on random matrices")
{
    for (int trial = 0; trial < 1000; ++trial)
    {
        const std::size_t rows = uniform(1, 6), cols = uniform(1, 6);
        const Small a = random_small(rows, cols);
        const IntMatrix A = from_small(a, rows, cols);
        const auto d = smith_normal_form(A);
        check_decomposition(A, d);

        // Uniqueness oracle: d1 * ... * dk = D_k, and the rank is the largest k with D_k != 0.
        if (trial % 4 == 0)
        {
            Integer prod = 1;
            std::size_t rank = 0;
            for (std::size_t k = 1; k <= std::min(rows, cols); ++k)
            {
                const long long Dk = determinantal_divisor(a, k);
                if (Dk != 0)
                    rank = k;
                prod *= d.S(k - 1, k - 1);
                REQUIRE(prod == Dk);
            }
            REQUIRE(d.rank == rank);
        }
    }
}

TEST_CASE("smith form is deterministic")
{
    const IntMatrix A{{3, -6, 9}, {0, 4, 2}, {7, 1, 1}};
    CHECK(smith_normal_form(A).U == smith_normal_form(A).U);
    CHECK(smith_normal_form(A).V == smith_normal_form(A).V);
}

TEST_CASE("entries beyond 64 bits stay exact")
{
    const Integer big = Integer(1) << 80;
    IntMatrix A(2, 2);
    A(0, 0) = big;
    A(0, 1) = big * 3;
    A(1, 0) = big * 5;
    A(1, 1) = big * 7 + 1;
    const auto d = smith_normal_form(A);
    check_decomposition(A, d);
    CHECK(d.S(0, 0) == 1);
    CHECK(d.S(1, 1) == abs(A.determinant()));
}

TEST_CASE("integer solving: fixed cases")
{
    const IntMatrix D{{2, 0}, {0, 3}};
    auto x = solve_integer(D, IntVector{4, 6});
    REQUIRE(x);
    CHECK(*x == IntVector{2, 2});

    CHECK_FALSE(solve_integer(IntMatrix{{2}}, IntVector{3}));

    const IntMatrix A{{2, 4}, {6, 8}};
    auto y = solve_integer(A, IntVector{2, 6});
    REQUIRE(y);
    CHECK(A * std::span<const Integer>(*y) == IntVector{2, 6});
    // Brute-force confirmation that a small solution exists at all.
    bool found = false;
    for (long long p = -5; p <= 5 && !found; ++p)
        for (long long q = -5; q <= 5 && !found; ++q)
            found = 2 * p + 4 * q == 2 && 6 * p + 8 * q == 6;
    CHECK(found);
}

TEST_CASE("integer solving agrees with brute force on small systems")
{
    int solvable = 0, unsolvable = 0;
    for (int trial = 0; trial < 300; ++trial)
    {
        const std::size_t rows = uniform(1, 3), cols = uniform(1, 3);
        const Small a = random_small(rows, cols, 6);
        const IntMatrix A = from_small(a, rows, cols);
        IntVector b(rows);
        for (auto& v : b)
            v = uniform(-12, 12);
        const IntegerSolver solver(A);
        const auto x = solver.solve(b);
        if (x)
        {
            ++solvable;
            REQUIRE(A * std::span<const Integer>(*x) == b);
            continue;
        }
        ++unsolvable;
        std::vector<long long> bb;
        for (const auto& v : b)
            bb.push_back(v.convert_to<long long>());
        std::array<long long, 3> t{};
        const long long R = 20;
        const long long span1 = cols > 1 ? R : 0, span2 = cols > 2 ? R : 0;
        for (t[0] = -R; t[0] <= R; ++t[0])
            for (t[1] = -span1; t[1] <= span1; ++t[1])
                for (t[2] = -span2; t[2] <= span2; ++t[2])
                {
                    bool ok = true;
                    for (std::size_t i = 0; i < rows && ok; ++i)
                    {
                        long long s = 0;
                        for (std::size_t j = 0; j < cols; ++j)
                            s += a[i][j] * t[j];
                        ok = s == bb[i];
                    }
                    REQUIRE_FALSE(ok);
                }
    }
    CHECK(solvable > 0);
    CHECK(unsolvable > 0);
}

TEST_CASE("unimodular inverse")
{
    const IntMatrix A{{2, 1}, {1, 1}};
    CHECK(unimodular_inverse(A) * A == IntMatrix::identity(2));
    CHECK_THROWS(unimodular_inverse(IntMatrix{{2, 0}, {0, 1}}));
}

TEST_CASE("mod_nonneg")
{
    CHECK(mod_nonneg(-3, 2) == 1);
    CHECK(mod_nonneg(7, -3) == 1);
    CHECK(mod_nonneg(0, 5) == 0);
}
