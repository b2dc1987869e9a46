#include <array>
#include <numeric>

#include "fibercov/complex.hpp"
#include "fibercov/error.hpp"

namespace fibercov::builtin {

namespace {

constexpr int kGrid = 3;

// 11 vertices, 51 edges, 80 triangles, 40 tetrahedra.
constexpr int kRp3Facets[40][4] = {
    {0, 1, 3, 6}, {0, 1, 3, 8}, {0, 1, 6, 9}, {0, 1, 8, 10}, {0, 1, 9, 10},
    {0, 2, 3, 7}, {0, 2, 3, 8}, {0, 2, 4, 5}, {0, 2, 4, 7}, {0, 2, 5, 8},
    {0, 3, 6, 7}, {0, 4, 5, 9}, {0, 4, 6, 7}, {0, 4, 6, 9}, {0, 5, 8, 10},
    {0, 5, 9, 10}, {1, 2, 4, 5}, {1, 2, 4, 7}, {1, 2, 5, 6}, {1, 2, 6, 9},
    {1, 2, 7, 9}, {1, 3, 4, 5}, {1, 3, 4, 8}, {1, 3, 5, 6}, {1, 4, 7, 8},
    {1, 7, 8, 10}, {1, 7, 9, 10}, {2, 3, 7, 9}, {2, 3, 8, 9}, {2, 5, 6, 8},
    {2, 6, 8, 9}, {3, 4, 5, 9}, {3, 4, 8, 9}, {3, 5, 6, 7}, {3, 5, 7, 9},
    {4, 6, 7, 8}, {4, 6, 8, 9}, {5, 6, 7, 8}, {5, 7, 8, 10}, {5, 7, 9, 10},
};

int wrap(int x)
{
    return ((x % kGrid) + kGrid) % kGrid;
}

// Signed 1-chain of the closed edge path v0 -> v1 -> ... -> v0.
IntVector loop_coefficients(const SimplicialComplex& X, const std::vector<int>& path)
{
    IntVector c(X.count(1));
    for (std::size_t i = 0; i < path.size(); ++i)
    {
        int u = path[i], v = path[(i + 1) % path.size()];
        auto idx = X.index_of(u < v ? Simplex{u, v} : Simplex{v, u});
        if (!idx)
            throw Error("builtin: loop uses a missing edge");
        c[*idx] += (u < v) ? 1 : -1;
    }
    return c;
}

std::vector<int> loop_path(int axis, std::array<int, 3> base)
{
    std::vector<int> path;
    for (int s = 0; s < kGrid; ++s)
    {
        std::array<int, 3> p = base;
        p[axis] += s;
        path.push_back(torus_vertex(p[0], p[1], p[2]));
    }
    return path;
}

ComplexPtr make_torus3()
{
    std::vector<Simplex> tets;
    std::array<int, 3> perm{0, 1, 2};
    for (int x = 0; x < kGrid; ++x)
        for (int y = 0; y < kGrid; ++y)
            for (int z = 0; z < kGrid; ++z)
            {
                std::iota(perm.begin(), perm.end(), 0);
                do
                {
                    std::array<int, 3> p{x, y, z};
                    Simplex t{torus_vertex(p[0], p[1], p[2])};
                    for (int axis : perm)
                    {
                        ++p[axis];
                        t.push_back(torus_vertex(p[0], p[1], p[2]));
                    }
                    tets.push_back(std::move(t));
                } while (std::next_permutation(perm.begin(), perm.end()));
            }
    // The loops only depend on the edge set, which we get from a first pass.
    ComplexPtr skeleton = SimplicialComplex::from_top_simplices(tets);
    std::vector<IntVector> loops;
    for (int axis = 0; axis < 3; ++axis)
        loops.push_back(loop_coefficients(*skeleton, loop_path(axis, {0, 0, 0})));
    return SimplicialComplex::from_top_simplices(tets, "builtin:t3", std::move(loops));
}

ComplexPtr make_rp3()
{
    std::vector<Simplex> tets;
    for (const auto& f : kRp3Facets)
        tets.push_back({f[0], f[1], f[2], f[3]});
    return SimplicialComplex::from_top_simplices(tets, "builtin:rp3");
}

} // namespace

int torus_vertex(int x, int y, int z)
{
    return wrap(x) + kGrid * wrap(y) + kGrid * kGrid * wrap(z);
}

std::array<int, 3> torus_grid_point(int vertex)
{
    return {vertex % kGrid, (vertex / kGrid) % kGrid, vertex / (kGrid * kGrid)};
}

ComplexPtr torus3()
{
    static const ComplexPtr X = make_torus3();
    return X;
}

ComplexPtr rp3()
{
    static const ComplexPtr X = make_rp3();
    return X;
}

ComplexPtr circle()
{
    static const ComplexPtr X = SimplicialComplex::from_top_simplices({{0, 1}, {1, 2}, {0, 2}}, "builtin:circle");
    return X;
}

Chain torus_loop(int i)
{
    return torus_loop(i, {0, 0, 0});
}

Chain torus_loop(int i, std::array<int, 3> base)
{
    if (i < 0 || i > 2)
        throw Error("torus_loop: axis must be 0, 1 or 2");
    ComplexPtr X = torus3();
    return Chain(X, 1, loop_coefficients(*X, loop_path(i, base)));
}

Cochain torus_seam_cocycle(int i)
{
    if (i < 0 || i > 2)
        throw Error("torus_seam_cocycle: axis must be 0, 1 or 2");
    ComplexPtr X = torus3();
    Cochain w(X, 1);
    for (std::size_t e = 0; e < X->count(1); ++e)
    {
        const Simplex& s = X->simplex(1, e);
        const int ha = torus_grid_point(s[0])[i];
        const int hb = torus_grid_point(s[1])[i];
        // Geometric displacement of the edge along axis i, lifted to {-1, 0, 1}.
        int lifted = wrap(hb - ha);
        if (lifted == 2)
            lifted = -1;
        w[e] = (lifted - (hb - ha)) / kGrid;
    }
    return w;
}

ComplexPtr by_name(const std::string& name)
{
    if (name == "builtin:t3")
        return torus3();
    if (name == "builtin:rp3")
        return rp3();
    if (name == "builtin:circle")
        return circle();
    return nullptr;
}

} // namespace fibercov::builtin
