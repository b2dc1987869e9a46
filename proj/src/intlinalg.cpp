#include "fibercov/intlinalg.hpp"

#include <algorithm>
#include <utility>

#include "fibercov/error.hpp"

namespace fibercov {

Integer mod_nonneg(const Integer& a, const Integer& m)
{
    Integer mm = abs(m);
    Integer r = a % mm;
    if (r < 0)
        r += mm;
    return r;
}

std::string to_string(const Integer& a)
{
    return a.str();
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols)
{
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows)
    {
        if (r.size() != cols_)
            throw Error("IntMatrix: ragged initializer");
        for (long long v : r)
            data_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(std::size_t n)
{
    IntMatrix I(n, n);
    for (std::size_t i = 0; i < n; ++i)
        I(i, i) = 1;
    return I;
}

IntVector IntMatrix::column(std::size_t j) const
{
    IntVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        c[i] = (*this)(i, j);
    return c;
}

IntMatrix IntMatrix::transpose() const
{
    IntMatrix T(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            T(j, i) = (*this)(i, j);
    return T;
}

bool IntMatrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x.is_zero(); });
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const
{
    if (cols_ != other.rows_)
        throw Error("IntMatrix: dimension mismatch in product");
    IntMatrix P(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k)
        {
            const Integer& a = (*this)(i, k);
            if (a.is_zero())
                continue;
            for (std::size_t j = 0; j < other.cols_; ++j)
            {
                const Integer& b = other(k, j);
                if (!b.is_zero())
                    P(i, j) += a * b;
            }
        }
    return P;
}

IntVector IntMatrix::operator*(std::span<const Integer> v) const
{
    if (v.size() != cols_)
        throw Error("IntMatrix: dimension mismatch in matrix-vector product");
    IntVector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
        {
            const Integer& a = (*this)(i, j);
            if (!a.is_zero() && !v[j].is_zero())
                out[i] += a * v[j];
        }
    return out;
}

Integer IntMatrix::determinant() const
{
    if (rows_ != cols_)
        throw Error("IntMatrix: determinant of non-square matrix");
    const std::size_t n = rows_;
    if (n == 0)
        return 1;
    IntMatrix M = *this;
    Integer sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k)
    {
        if (M(k, k).is_zero())
        {
            std::size_t swap_row = k + 1;
            while (swap_row < n && M(swap_row, k).is_zero())
                ++swap_row;
            if (swap_row == n)
                return 0;
            for (std::size_t j = 0; j < n; ++j)
                std::swap(M(k, j), M(swap_row, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                M(i, j) = (M(i, j) * M(k, k) - M(i, k) * M(k, j)) / prev;
        prev = M(k, k);
    }
    return sign * M(n - 1, n - 1);
}

IntVector SmithDecomposition::invariant_factors() const
{
    IntVector d(rank);
    for (std::size_t i = 0; i < rank; ++i)
        d[i] = S(i, i);
    return d;
}

namespace {

// Elementary operations on S, mirrored onto U, U^-1 (rows) and V, V^-1 (columns).
struct SmithWorkspace
{
    IntMatrix S, U, U_inv, V, V_inv;

    explicit SmithWorkspace(const IntMatrix& A)
        : S(A),
          U(IntMatrix::identity(A.rows())),
          U_inv(IntMatrix::identity(A.rows())),
          V(IntMatrix::identity(A.cols())),
          V_inv(IntMatrix::identity(A.cols()))
    {
    }

    static void add_row_multiple(IntMatrix& M, std::size_t dst, std::size_t src, const Integer& q)
    {
        for (std::size_t j = 0; j < M.cols(); ++j)
        {
            const Integer& s = M(src, j);
            if (!s.is_zero())
                M(dst, j) += q * s;
        }
    }

    static void add_col_multiple(IntMatrix& M, std::size_t dst, std::size_t src, const Integer& q)
    {
        for (std::size_t i = 0; i < M.rows(); ++i)
        {
            const Integer& s = M(i, src);
            if (!s.is_zero())
                M(i, dst) += q * s;
        }
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t j = 0; j < S.cols(); ++j)
            std::swap(S(a, j), S(b, j));
        for (std::size_t j = 0; j < U.cols(); ++j)
            std::swap(U(a, j), U(b, j));
        for (std::size_t i = 0; i < U_inv.rows(); ++i)
            std::swap(U_inv(i, a), U_inv(i, b));
    }

    void swap_cols(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t i = 0; i < S.rows(); ++i)
            std::swap(S(i, a), S(i, b));
        for (std::size_t i = 0; i < V.rows(); ++i)
            std::swap(V(i, a), V(i, b));
        for (std::size_t j = 0; j < V_inv.cols(); ++j)
            std::swap(V_inv(a, j), V_inv(b, j));
    }

    // row_dst += q * row_src
    void add_row(std::size_t dst, std::size_t src, const Integer& q)
    {
        add_row_multiple(S, dst, src, q);
        add_row_multiple(U, dst, src, q);
        add_col_multiple(U_inv, src, dst, -q);
    }

    // col_dst += q * col_src
    void add_col(std::size_t dst, std::size_t src, const Integer& q)
    {
        add_col_multiple(S, dst, src, q);
        add_col_multiple(V, dst, src, q);
        add_row_multiple(V_inv, src, dst, -q);
    }

    void negate_row(std::size_t r)
    {
        for (std::size_t j = 0; j < S.cols(); ++j)
            S(r, j) = -S(r, j);
        for (std::size_t j = 0; j < U.cols(); ++j)
            U(r, j) = -U(r, j);
        for (std::size_t i = 0; i < U_inv.rows(); ++i)
            U_inv(i, r) = -U_inv(i, r);
    }

    // Smallest nonzero |entry| in the block [t.., t..]; ties to lowest (row, col).
    bool find_pivot(std::size_t t, std::size_t& pr, std::size_t& pc) const
    {
        bool found = false;
        Integer best;
        for (std::size_t i = t; i < S.rows(); ++i)
            for (std::size_t j = t; j < S.cols(); ++j)
            {
                const Integer& x = S(i, j);
                if (x.is_zero())
                    continue;
                Integer ax = abs(x);
                if (!found || ax < best)
                {
                    best = std::move(ax);
                    pr = i;
                    pc = j;
                    found = true;
                }
            }
        return found;
    }
};

} // namespace

SmithDecomposition smith_normal_form(const IntMatrix& A)
{
    SmithWorkspace w(A);
    const std::size_t m = A.rows();
    const std::size_t n = A.cols();
    std::size_t rank = 0;

    for (std::size_t t = 0; t < std::min(m, n); ++t)
    {
        std::size_t pr = 0, pc = 0;
        if (!w.find_pivot(t, pr, pc))
            break;
        while (true)
        {
            w.swap_rows(t, pr);
            w.swap_cols(t, pc);
            const Integer pivot = w.S(t, t);

            bool remainder = false;
            for (std::size_t i = t + 1; i < m; ++i)
            {
                if (w.S(i, t).is_zero())
                    continue;
                Integer q = w.S(i, t) / pivot;
                if (!q.is_zero())
                    w.add_row(i, t, -q);
                if (!w.S(i, t).is_zero())
                    remainder = true;
            }
            for (std::size_t j = t + 1; j < n; ++j)
            {
                if (w.S(t, j).is_zero())
                    continue;
                Integer q = w.S(t, j) / pivot;
                if (!q.is_zero())
                    w.add_col(j, t, -q);
                if (!w.S(t, j).is_zero())
                    remainder = true;
            }
            if (!remainder)
            {
                // Row and column t are clear; enforce d_t | every remaining entry.
                bool divisible = true;
                for (std::size_t i = t + 1; i < m && divisible; ++i)
                    for (std::size_t j = t + 1; j < n; ++j)
                        if (w.S(i, j) % pivot != 0)
                        {
                            w.add_row(t, i, Integer(1));
                            divisible = false;
                            break;
                        }
                if (divisible)
                    break;
            }
            w.find_pivot(t, pr, pc);
        }
        if (w.S(t, t) < 0)
            w.negate_row(t);
        ++rank;
    }

    SmithDecomposition out;
    out.U = std::move(w.U);
    out.S = std::move(w.S);
    out.V = std::move(w.V);
    out.U_inv = std::move(w.U_inv);
    out.V_inv = std::move(w.V_inv);
    out.rank = rank;
    return out;
}

IntegerSolver::IntegerSolver(IntMatrix A)
    : A_(std::move(A)), snf_(smith_normal_form(A_))
{
}

std::optional<IntVector> IntegerSolver::solve(std::span<const Integer> b) const
{
    if (b.size() != A_.rows())
        throw Error("solve_integer: right-hand side has wrong length");
    IntVector c = snf_.U * b;
    IntVector y(A_.cols());
    for (std::size_t i = 0; i < c.size(); ++i)
    {
        if (i < snf_.rank)
        {
            const Integer& d = snf_.S(i, i);
            if (c[i] % d != 0)
                return std::nullopt;
            y[i] = c[i] / d;
        }
        else if (!c[i].is_zero())
            return std::nullopt;
    }
    IntVector x = snf_.V * std::span<const Integer>(y);
    if (A_ * std::span<const Integer>(x) != IntVector(b.begin(), b.end()))
        throw Error("solve_integer: internal verification failed");
    return x;
}

std::optional<IntVector> solve_integer(const IntMatrix& A, std::span<const Integer> b)
{
    return IntegerSolver(A).solve(b);
}

IntMatrix unimodular_inverse(const IntMatrix& A)
{
    if (A.rows() != A.cols())
        throw Error("unimodular_inverse: matrix is not square");
    SmithDecomposition d = smith_normal_form(A);
    if (d.S != IntMatrix::identity(A.rows()))
        throw Error("unimodular_inverse: matrix is not unimodular");
    return d.V * d.U;
}

} // namespace fibercov
