/**
 * Exact integer linear algebra: dense integer matrices, Smith normal form
 * with transformation matrices, and integer linear system solving.
 *
 * Everything homological in this library reduces to these two operations.
 */
#ifndef FIBERCOV_INTLINALG_HPP
#define FIBERCOV_INTLINALG_HPP

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace fibercov {

using Integer = boost::multiprecision::cpp_int;
using IntVector = std::vector<Integer>;

/// Remainder of a modulo m, in [0, |m|).
Integer mod_nonneg(const Integer& a, const Integer& m);

std::string to_string(const Integer& a);

/**
 * Dense row-major matrix of arbitrary-precision integers.
 */
class IntMatrix
{
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<Integer> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const Integer> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    IntVector column(std::size_t j) const;

    IntMatrix transpose() const;
    bool is_zero() const;

    IntMatrix operator*(const IntMatrix& other) const;
    IntVector operator*(std::span<const Integer> v) const;
    bool operator==(const IntMatrix& other) const = default;

    /// Determinant by fraction-free (Bareiss) elimination; square matrices only.
    Integer determinant() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

/**
 * U * A * V = S with U, V unimodular and S diagonal with d1 | d2 | ... >= 0.
 *
 * The inverses of U and V are carried along; cohomology needs both
 * directions of each basis change.
 */
struct SmithDecomposition
{
    IntMatrix U;
    IntMatrix S;
    IntMatrix V;
    IntMatrix U_inv;
    IntMatrix V_inv;
    std::size_t rank = 0;

    /// Nonzero diagonal entries d_1 | ... | d_rank.
    IntVector invariant_factors() const;
};

/**
 * Smith normal form by elementary row and column operations.
 *
 * Pivot: smallest nonzero absolute value in the remaining block, ties broken
 * by lowest (row, col). Output is a deterministic function of the input.
 */
SmithDecomposition smith_normal_form(const IntMatrix& A);

/**
 * Reusable solver for A x = b over the integers. Holds the Smith
 * decomposition of A, so each solve costs two matrix-vector products.
 */
class IntegerSolver
{
public:
    explicit IntegerSolver(IntMatrix A);

    const IntMatrix& matrix() const { return A_; }
    const SmithDecomposition& smith() const { return snf_; }

    /// Some x with A x = b, or nullopt when no integer solution exists.
    std::optional<IntVector> solve(std::span<const Integer> b) const;

private:
    IntMatrix A_;
    SmithDecomposition snf_;
};

std::optional<IntVector> solve_integer(const IntMatrix& A, std::span<const Integer> b);

/// Inverse of a unimodular square matrix; throws if |det| != 1.
IntMatrix unimodular_inverse(const IntMatrix& A);

} // namespace fibercov

#endif
