/**
 * Simplicial complexes, integer (co)chains, and integral cohomology with
 * explicit generators and canonical coordinates.
 *
 * Simplices are strictly increasing vertex tuples; the lexicographic order
 * of the k-simplices fixes the bases of C_k and C^k. Orientation signs come
 * from the alternating-face rule on those tuples.
 */
#ifndef FIBERCOV_COMPLEX_HPP
#define FIBERCOV_COMPLEX_HPP

#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fibercov/intlinalg.hpp"

namespace fibercov {

using Simplex = std::vector<int>;

class SimplicialComplex;
class CohomologyGroup;
using ComplexPtr = std::shared_ptr<const SimplicialComplex>;
using GroupPtr = std::shared_ptr<const CohomologyGroup>;

/// Integer k-chain: one coefficient per canonical k-simplex.
class Chain
{
public:
    Chain(ComplexPtr complex, int degree);
    Chain(ComplexPtr complex, int degree, IntVector coefficients);

    const ComplexPtr& complex() const { return complex_; }
    int degree() const { return degree_; }
    const IntVector& coefficients() const { return coeffs_; }
    Integer& operator[](std::size_t i) { return coeffs_[i]; }
    const Integer& operator[](std::size_t i) const { return coeffs_[i]; }

    /// Boundary (k-1)-chain; the boundary of a 0-chain is empty.
    Chain boundary() const;
    bool is_cycle() const;

    Chain operator+(const Chain& o) const;
    Chain operator-(const Chain& o) const;
    Chain operator-() const;
    Chain operator*(const Integer& s) const;
    bool operator==(const Chain& o) const;

private:
    ComplexPtr complex_;
    int degree_;
    IntVector coeffs_;
};

/// Integer k-cochain: one value per canonical k-simplex.
class Cochain
{
public:
    Cochain(ComplexPtr complex, int degree);
    Cochain(ComplexPtr complex, int degree, IntVector values);

    const ComplexPtr& complex() const { return complex_; }
    int degree() const { return degree_; }
    const IntVector& values() const { return values_; }
    Integer& operator[](std::size_t i) { return values_[i]; }
    const Integer& operator[](std::size_t i) const { return values_[i]; }

    /// delta z (sigma) = sum_i (-1)^i z(d_i sigma). Zero cochain above top dimension.
    Cochain coboundary() const;
    bool is_cocycle() const;
    bool is_zero() const;

    Cochain operator+(const Cochain& o) const;
    Cochain operator-(const Cochain& o) const;
    Cochain operator-() const;
    Cochain operator*(const Integer& s) const;
    bool operator==(const Cochain& o) const;

private:
    ComplexPtr complex_;
    int degree_;
    IntVector values_;
};

Cochain operator*(const Integer& s, const Cochain& z);

/**
 * An element of H^k given by canonical coordinates: free coordinates in Z
 * and torsion coordinates reduced into [0, t_i).
 */
class CohomologyClass
{
public:
    CohomologyClass(GroupPtr group, IntVector free_coords, IntVector torsion_coords);

    const GroupPtr& group() const { return group_; }
    const IntVector& free_coords() const { return free_; }
    const IntVector& torsion_coords() const { return torsion_; }

    bool is_zero() const;

    CohomologyClass operator+(const CohomologyClass& o) const;
    CohomologyClass operator-(const CohomologyClass& o) const;
    CohomologyClass operator-() const;
    CohomologyClass operator*(const Integer& s) const;
    bool operator==(const CohomologyClass& o) const;

    /// "(f1,f2,...)" or "(f1,...|t1,...)" when the group has torsion.
    std::string to_string() const;

private:
    GroupPtr group_;
    IntVector free_;
    IntVector torsion_;
};

CohomologyClass operator*(const Integer& s, const CohomologyClass& c);

/**
 * H^k(X; Z) = Z^r + Z_t1 + ... with explicit cocycle generators.
 *
 * Instances are owned by their complex's cache and handed out through
 * aliasing pointers that keep the complex alive.
 */
class CohomologyGroup
{
public:
    int degree() const { return degree_; }
    std::size_t free_rank() const { return free_generators_.size(); }
    const IntVector& torsion_orders() const { return torsion_orders_; }
    const SimplicialComplex& complex() const { return *complex_; }

    Cochain free_generator(std::size_t i) const;
    Cochain torsion_generator(std::size_t i) const;
    /// Torsion generators first, then free generators.
    std::vector<Cochain> all_generators() const;

    /// Canonical coordinates of a cocycle; throws if z is not a cocycle.
    CohomologyClass coordinates(const Cochain& z) const;
    /// sum coord_i * generator_i
    Cochain representative(const CohomologyClass& c) const;

    CohomologyClass make_class(IntVector free_coords, IntVector torsion_coords = {}) const;
    CohomologyClass zero() const;

    /// "Z^r" followed by " + Z_t" for each torsion order.
    std::string describe() const;

private:
    friend class SimplicialComplex;
    CohomologyGroup() = default;

    GroupPtr self() const;

    const SimplicialComplex* complex_ = nullptr;
    int degree_ = 0;
    IntVector torsion_orders_;
    std::vector<IntVector> torsion_generators_;
    std::vector<IntVector> free_generators_;

    // Coordinates: kernel coordinates y = (V_out^-1 z)[kernel_offset..],
    // w = U_inner y; torsion/free coordinates read off w.
    IntMatrix kernel_coords_;
    IntMatrix inner_U_;
    std::vector<std::size_t> torsion_slots_;
    std::vector<std::size_t> free_slots_;
    IntMatrix free_change_; // applied to free coordinates: identity or P^T
};

/**
 * Finite simplicial complex closed under faces. Immutable after
 * construction; always held through shared_ptr.
 */
class SimplicialComplex : public std::enable_shared_from_this<SimplicialComplex>
{
public:
    /// Builds the complex generated by the given simplices (any vertex order).
    /// `preferred_h1` optionally designates 1-cycles whose dual basis becomes
    /// the free basis of H^1 (the built-in torus uses its coordinate loops so
    /// that canonical coordinates are the standard ones).
    static ComplexPtr from_top_simplices(const std::vector<Simplex>& top, std::string name = {},
                                         std::vector<IntVector> preferred_h1 = {});

    const std::string& name() const { return name_; }
    int dimension() const { return static_cast<int>(simplices_.size()) - 1; }
    std::size_t vertex_count() const { return count(0); }
    std::size_t count(int k) const;
    const std::vector<Simplex>& simplices(int k) const;
    const Simplex& simplex(int k, std::size_t i) const { return simplices(k)[i]; }

    /// Index of a sorted vertex tuple among the k-simplices, if present.
    std::optional<std::size_t> index_of(const Simplex& s) const;

    /// Euler characteristic from simplex counts.
    long long euler_characteristic() const;

    // Cached structure (computed once per degree, thread-safe).
    GroupPtr cohomology(int k) const;
    const IntegerSolver& coboundary_solver(int k) const;
    /// Solver for [s*g_1 ... s*g_m | delta_{k-1}] with g_i all generators of H^k.
    const IntegerSolver& multiple_solver(int k, const Integer& s) const;
    std::vector<Chain> cycle_basis(int k) const;

private:
    SimplicialComplex() = default;

    std::unique_ptr<CohomologyGroup> compute_cohomology(int k) const;
    std::vector<Chain> compute_cycle_basis(int k) const;

    std::string name_;
    std::vector<std::vector<Simplex>> simplices_;

    std::vector<IntVector> preferred_h1_;

    mutable std::recursive_mutex cache_mutex_;
    mutable std::map<int, std::unique_ptr<CohomologyGroup>> groups_;
    mutable std::map<int, std::unique_ptr<IntegerSolver>> coboundary_solvers_;
    mutable std::map<std::pair<int, Integer>, std::unique_ptr<IntegerSolver>> multiple_solvers_;
    mutable std::map<int, std::vector<IntVector>> cycle_bases_;
};

/// Matrix of d_k : C_k -> C_{k-1}; requires 1 <= k <= dimension.
IntMatrix boundary_matrix(const SimplicialComplex& X, int k);
/// Matrix of delta_k : C^k -> C^{k+1} (0 x n_k at the top degree).
IntMatrix coboundary_matrix(const SimplicialComplex& X, int k);

GroupPtr cohomology(const ComplexPtr& X, int k);
CohomologyClass coordinates_of_cocycle(const Cochain& z);
/// A primitive w with delta w = z, or nullopt when [z] != 0. Requires degree >= 1.
std::optional<Cochain> is_coboundary(const Cochain& z);
std::vector<Chain> cycle_basis(const ComplexPtr& X, int k);
/// Kronecker pairing of a cocycle with a cycle.
Integer evaluate(const Cochain& z, const Chain& c);

/// True iff the class of the cocycle z lies in s * H^k.
bool is_multiple_class(const Cochain& z, const Integer& s);

namespace builtin {

/// 3x3x3 periodic cube grid, six tetrahedra per cube (Kuhn subdivision).
ComplexPtr torus3();
/// 11-vertex, 40-tetrahedron triangulation of real projective 3-space.
ComplexPtr rp3();
/// Boundary of a triangle (a circle with three edges).
ComplexPtr circle();

/// Vertex id of grid point (x, y, z) in the torus, coordinates mod 3.
int torus_vertex(int x, int y, int z);
/// Grid coordinates of a torus vertex.
std::array<int, 3> torus_grid_point(int vertex);
/// Coordinate loop gamma_i (i = 0, 1, 2) through the origin, as a 1-cycle.
Chain torus_loop(int i);
/// Coordinate loop gamma_i through the grid point `base`.
Chain torus_loop(int i, std::array<int, 3> base);
/// Seam cocycle omega_i: +1 on the loop gamma_i, 0 on the other two loops.
Cochain torus_seam_cocycle(int i);

/// Resolves "builtin:t3", "builtin:rp3", "builtin:circle"; nullptr otherwise.
ComplexPtr by_name(const std::string& name);

} // namespace builtin

} // namespace fibercov

#endif
