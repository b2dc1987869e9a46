#include "fibercov/complex.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "fibercov/error.hpp"

namespace fibercov {

namespace {

void require_same_complex(const ComplexPtr& a, const ComplexPtr& b, const char* what)
{
    if (a.get() != b.get())
        throw Error(std::string(what) + ": operands live on different complexes");
}

Simplex drop_vertex(const Simplex& s, std::size_t i)
{
    Simplex f;
    f.reserve(s.size() - 1);
    for (std::size_t j = 0; j < s.size(); ++j)
        if (j != i)
            f.push_back(s[j]);
    return f;
}

IntMatrix row_block(const IntMatrix& M, std::size_t first)
{
    IntMatrix B(M.rows() - first, M.cols());
    for (std::size_t i = first; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j)
            B(i - first, j) = M(i, j);
    return B;
}

IntMatrix column_block(const IntMatrix& M, std::size_t first)
{
    IntMatrix B(M.rows(), M.cols() - first);
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = first; j < M.cols(); ++j)
            B(i, j - first) = M(i, j);
    return B;
}

Integer dot(std::span<const Integer> a, std::span<const Integer> b)
{
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && !b[i].is_zero())
            s += a[i] * b[i];
    return s;
}

/**
 * ker(out) / im(in) for consecutive maps in -> mid -> out. Generators are
 * the columns of K * U_inner^-1 where K spans ker(out); slot j is torsion
 * of order d_j when 1 < d_j, free when j is past the rank of the inner map.
 */
struct Subquotient
{
    IntMatrix kernel_coords; // rows of V_out^-1 past rank(out)
    IntMatrix inner_U;
    IntMatrix generators; // columns
    IntVector inner_factors;
    std::size_t inner_rank = 0;
};

Subquotient subquotient(const SmithDecomposition& out_snf, const IntMatrix& in)
{
    Subquotient q;
    const std::size_t r = out_snf.rank;
    q.kernel_coords = row_block(out_snf.V_inv, r);
    IntMatrix K = column_block(out_snf.V, r);
    SmithDecomposition inner = smith_normal_form(q.kernel_coords * in);
    q.generators = K * inner.U_inv;
    q.inner_U = std::move(inner.U);
    q.inner_rank = inner.rank;
    q.inner_factors = inner.invariant_factors();
    return q;
}

} // namespace

// ---------------------------------------------------------------- Chain

Chain::Chain(ComplexPtr complex, int degree)
    : complex_(std::move(complex)), degree_(degree), coeffs_(complex_->count(degree))
{
}

Chain::Chain(ComplexPtr complex, int degree, IntVector coefficients)
    : complex_(std::move(complex)), degree_(degree), coeffs_(std::move(coefficients))
{
    if (coeffs_.size() != complex_->count(degree_))
        throw Error("Chain: coefficient vector length does not match the number of simplices");
}

Chain Chain::boundary() const
{
    if (degree_ == 0)
        return Chain(complex_, -1);
    Chain out(complex_, degree_ - 1);
    for (std::size_t j = 0; j < coeffs_.size(); ++j)
    {
        if (coeffs_[j].is_zero())
            continue;
        const Simplex& s = complex_->simplex(degree_, j);
        for (std::size_t i = 0; i < s.size(); ++i)
        {
            std::size_t f = *complex_->index_of(drop_vertex(s, i));
            if (i % 2 == 0)
                out.coeffs_[f] += coeffs_[j];
            else
                out.coeffs_[f] -= coeffs_[j];
        }
    }
    return out;
}

bool Chain::is_cycle() const
{
    const Chain b = boundary();
    return std::all_of(b.coeffs_.begin(), b.coeffs_.end(), [](const Integer& x) { return x.is_zero(); });
}

Chain Chain::operator+(const Chain& o) const
{
    require_same_complex(complex_, o.complex_, "Chain +");
    if (degree_ != o.degree_)
        throw Error("Chain +: degree mismatch");
    Chain r = *this;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        r.coeffs_[i] += o.coeffs_[i];
    return r;
}

Chain Chain::operator-(const Chain& o) const
{
    return *this + (-o);
}

Chain Chain::operator-() const
{
    Chain r = *this;
    for (auto& x : r.coeffs_)
        x = -x;
    return r;
}

Chain Chain::operator*(const Integer& s) const
{
    Chain r = *this;
    for (auto& x : r.coeffs_)
        x *= s;
    return r;
}

bool Chain::operator==(const Chain& o) const
{
    return complex_.get() == o.complex_.get() && degree_ == o.degree_ && coeffs_ == o.coeffs_;
}

// ---------------------------------------------------------------- Cochain

Cochain::Cochain(ComplexPtr complex, int degree)
    : complex_(std::move(complex)), degree_(degree), values_(complex_->count(degree))
{
}

Cochain::Cochain(ComplexPtr complex, int degree, IntVector values)
    : complex_(std::move(complex)), degree_(degree), values_(std::move(values))
{
    if (values_.size() != complex_->count(degree_))
        throw Error("Cochain: value vector length does not match the number of simplices");
}

Cochain Cochain::coboundary() const
{
    const int k = degree_ + 1;
    Cochain out(complex_, k);
    for (std::size_t j = 0; j < complex_->count(k); ++j)
    {
        const Simplex& s = complex_->simplex(k, j);
        Integer acc = 0;
        for (std::size_t i = 0; i < s.size(); ++i)
        {
            const Integer& v = values_[*complex_->index_of(drop_vertex(s, i))];
            if (v.is_zero())
                continue;
            if (i % 2 == 0)
                acc += v;
            else
                acc -= v;
        }
        out.values_[j] = std::move(acc);
    }
    return out;
}

bool Cochain::is_cocycle() const
{
    return coboundary().is_zero();
}

bool Cochain::is_zero() const
{
    return std::all_of(values_.begin(), values_.end(), [](const Integer& x) { return x.is_zero(); });
}

Cochain Cochain::operator+(const Cochain& o) const
{
    require_same_complex(complex_, o.complex_, "Cochain +");
    if (degree_ != o.degree_)
        throw Error("Cochain +: degree mismatch");
    Cochain r = *this;
    for (std::size_t i = 0; i < values_.size(); ++i)
        r.values_[i] += o.values_[i];
    return r;
}

Cochain Cochain::operator-(const Cochain& o) const
{
    return *this + (-o);
}

Cochain Cochain::operator-() const
{
    Cochain r = *this;
    for (auto& x : r.values_)
        x = -x;
    return r;
}

Cochain Cochain::operator*(const Integer& s) const
{
    Cochain r = *this;
    for (auto& x : r.values_)
        x *= s;
    return r;
}

bool Cochain::operator==(const Cochain& o) const
{
    return complex_.get() == o.complex_.get() && degree_ == o.degree_ && values_ == o.values_;
}

Cochain operator*(const Integer& s, const Cochain& z)
{
    return z * s;
}

// ---------------------------------------------------------------- CohomologyClass

CohomologyClass::CohomologyClass(GroupPtr group, IntVector free_coords, IntVector torsion_coords)
    : group_(std::move(group)), free_(std::move(free_coords)), torsion_(std::move(torsion_coords))
{
    if (free_.size() != group_->free_rank() || torsion_.size() != group_->torsion_orders().size())
        throw Error("CohomologyClass: coordinate count does not match the group");
    for (std::size_t i = 0; i < torsion_.size(); ++i)
        torsion_[i] = mod_nonneg(torsion_[i], group_->torsion_orders()[i]);
}

bool CohomologyClass::is_zero() const
{
    auto zero = [](const Integer& x) { return x.is_zero(); };
    return std::all_of(free_.begin(), free_.end(), zero) && std::all_of(torsion_.begin(), torsion_.end(), zero);
}

CohomologyClass CohomologyClass::operator+(const CohomologyClass& o) const
{
    if (group_.get() != o.group_.get())
        throw Error("CohomologyClass +: classes belong to different groups");
    IntVector f = free_, t = torsion_;
    for (std::size_t i = 0; i < f.size(); ++i)
        f[i] += o.free_[i];
    for (std::size_t i = 0; i < t.size(); ++i)
        t[i] += o.torsion_[i];
    return {group_, std::move(f), std::move(t)};
}

CohomologyClass CohomologyClass::operator-(const CohomologyClass& o) const
{
    return *this + (-o);
}

CohomologyClass CohomologyClass::operator-() const
{
    return *this * Integer(-1);
}

CohomologyClass CohomologyClass::operator*(const Integer& s) const
{
    IntVector f = free_, t = torsion_;
    for (auto& x : f)
        x *= s;
    for (auto& x : t)
        x *= s;
    return {group_, std::move(f), std::move(t)};
}

bool CohomologyClass::operator==(const CohomologyClass& o) const
{
    return group_.get() == o.group_.get() && free_ == o.free_ && torsion_ == o.torsion_;
}

std::string CohomologyClass::to_string() const
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < free_.size(); ++i)
        os << (i ? "," : "") << free_[i];
    if (!torsion_.empty())
    {
        os << '|';
        for (std::size_t i = 0; i < torsion_.size(); ++i)
            os << (i ? "," : "") << torsion_[i];
    }
    os << ')';
    return os.str();
}

CohomologyClass operator*(const Integer& s, const CohomologyClass& c)
{
    return c * s;
}

// ---------------------------------------------------------------- CohomologyGroup

GroupPtr CohomologyGroup::self() const
{
    return GroupPtr(complex_->shared_from_this(), this);
}

Cochain CohomologyGroup::free_generator(std::size_t i) const
{
    return Cochain(complex_->shared_from_this(), degree_, free_generators_.at(i));
}

Cochain CohomologyGroup::torsion_generator(std::size_t i) const
{
    return Cochain(complex_->shared_from_this(), degree_, torsion_generators_.at(i));
}

std::vector<Cochain> CohomologyGroup::all_generators() const
{
    std::vector<Cochain> g;
    for (std::size_t i = 0; i < torsion_generators_.size(); ++i)
        g.push_back(torsion_generator(i));
    for (std::size_t i = 0; i < free_generators_.size(); ++i)
        g.push_back(free_generator(i));
    return g;
}

CohomologyClass CohomologyGroup::coordinates(const Cochain& z) const
{
    if (z.complex().get() != complex_ || z.degree() != degree_)
        throw Error("coordinates_of_cocycle: cochain does not belong to this group's complex and degree");
    if (!z.is_cocycle())
        throw Error("coordinates_of_cocycle: input is not a cocycle");
    IntVector y = kernel_coords_ * std::span<const Integer>(z.values());
    IntVector w = inner_U_ * std::span<const Integer>(y);
    IntVector torsion(torsion_slots_.size());
    for (std::size_t i = 0; i < torsion_slots_.size(); ++i)
        torsion[i] = w[torsion_slots_[i]];
    IntVector free(free_slots_.size());
    for (std::size_t i = 0; i < free_slots_.size(); ++i)
        free[i] = w[free_slots_[i]];
    free = free_change_ * std::span<const Integer>(free);
    return CohomologyClass(self(), std::move(free), std::move(torsion));
}

Cochain CohomologyGroup::representative(const CohomologyClass& c) const
{
    if (c.group().get() != this)
        throw Error("representative: class belongs to a different group");
    Cochain z(complex_->shared_from_this(), degree_);
    for (std::size_t i = 0; i < torsion_generators_.size(); ++i)
        z = z + torsion_generator(i) * c.torsion_coords()[i];
    for (std::size_t i = 0; i < free_generators_.size(); ++i)
        z = z + free_generator(i) * c.free_coords()[i];
    return z;
}

CohomologyClass CohomologyGroup::make_class(IntVector free_coords, IntVector torsion_coords) const
{
    if (torsion_coords.empty())
        torsion_coords.resize(torsion_orders_.size());
    return CohomologyClass(self(), std::move(free_coords), std::move(torsion_coords));
}

CohomologyClass CohomologyGroup::zero() const
{
    return make_class(IntVector(free_rank()), IntVector(torsion_orders_.size()));
}

std::string CohomologyGroup::describe() const
{
    std::ostringstream os;
    os << "Z^" << free_rank();
    for (const auto& t : torsion_orders_)
        os << " + Z_" << t;
    return os.str();
}

// ---------------------------------------------------------------- SimplicialComplex

ComplexPtr SimplicialComplex::from_top_simplices(const std::vector<Simplex>& top, std::string name,
                                                 std::vector<IntVector> preferred_h1)
{
    if (top.empty())
        throw Error("SimplicialComplex: no simplices given");
    std::vector<std::set<Simplex>> faces;
    for (Simplex s : top)
    {
        if (s.empty())
            throw Error("SimplicialComplex: empty simplex");
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw Error("SimplicialComplex: simplex with repeated vertex");
        if (s.front() < 0)
            throw Error("SimplicialComplex: negative vertex id");
        if (faces.size() < s.size())
            faces.resize(s.size());
        // every nonempty subset of s
        const std::size_t n = s.size();
        for (unsigned mask = 1; mask < (1u << n); ++mask)
        {
            Simplex f;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (1u << i))
                    f.push_back(s[i]);
            faces[f.size() - 1].insert(std::move(f));
        }
    }
    auto X = std::shared_ptr<SimplicialComplex>(new SimplicialComplex());
    X->name_ = std::move(name);
    for (auto& level : faces)
        X->simplices_.emplace_back(level.begin(), level.end());
    for (const auto& c : preferred_h1)
        if (c.size() != X->count(1))
            throw Error("SimplicialComplex: preferred cycle has wrong length");
    X->preferred_h1_ = std::move(preferred_h1);
    return X;
}

std::size_t SimplicialComplex::count(int k) const
{
    if (k < 0 || k > dimension())
        return 0;
    return simplices_[k].size();
}

const std::vector<Simplex>& SimplicialComplex::simplices(int k) const
{
    static const std::vector<Simplex> empty;
    if (k < 0 || k > dimension())
        return empty;
    return simplices_[k];
}

std::optional<std::size_t> SimplicialComplex::index_of(const Simplex& s) const
{
    const int k = static_cast<int>(s.size()) - 1;
    const auto& level = simplices(k);
    auto it = std::lower_bound(level.begin(), level.end(), s);
    if (it == level.end() || *it != s)
        return std::nullopt;
    return static_cast<std::size_t>(it - level.begin());
}

long long SimplicialComplex::euler_characteristic() const
{
    long long chi = 0;
    for (int k = 0; k <= dimension(); ++k)
        chi += (k % 2 ? -1 : 1) * static_cast<long long>(count(k));
    return chi;
}

const IntegerSolver& SimplicialComplex::coboundary_solver(int k) const
{
    if (k < 0 || k > dimension())
        throw Error("coboundary_solver: degree out of range");
    std::lock_guard lock(cache_mutex_);
    auto& slot = coboundary_solvers_[k];
    if (!slot)
        slot = std::make_unique<IntegerSolver>(coboundary_matrix(*this, k));
    return *slot;
}

GroupPtr SimplicialComplex::cohomology(int k) const
{
    if (k < 0 || k > dimension())
        throw Error("cohomology: degree " + std::to_string(k) + " out of range [0, " +
                    std::to_string(dimension()) + "]");
    std::lock_guard lock(cache_mutex_);
    auto& slot = groups_[k];
    if (!slot)
        slot = compute_cohomology(k);
    return slot->self();
}

std::unique_ptr<CohomologyGroup> SimplicialComplex::compute_cohomology(int k) const
{
    const IntMatrix in = k >= 1 ? coboundary_matrix(*this, k - 1) : IntMatrix(count(k), 0);
    Subquotient q = subquotient(coboundary_solver(k).smith(), in);

    auto G = std::unique_ptr<CohomologyGroup>(new CohomologyGroup());
    G->complex_ = this;
    G->degree_ = k;
    G->kernel_coords_ = std::move(q.kernel_coords);
    G->inner_U_ = std::move(q.inner_U);
    for (std::size_t j = 0; j < q.generators.cols(); ++j)
    {
        if (j < q.inner_rank)
        {
            if (q.inner_factors[j] == 1)
                continue;
            G->torsion_slots_.push_back(j);
            G->torsion_orders_.push_back(q.inner_factors[j]);
            G->torsion_generators_.push_back(q.generators.column(j));
        }
        else
        {
            G->free_slots_.push_back(j);
            G->free_generators_.push_back(q.generators.column(j));
        }
    }
    const std::size_t r = G->free_generators_.size();
    G->free_change_ = IntMatrix::identity(r);

    if (k == 1 && !preferred_h1_.empty())
    {
        if (preferred_h1_.size() != r)
            throw Error("cohomology: preferred H^1 cycles do not match the free rank");
        IntMatrix P(r, r);
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = 0; b < r; ++b)
                P(a, b) = dot(G->free_generators_[a], preferred_h1_[b]);
        // New generators G X with X = (P^-1)^T are dual to the preferred cycles;
        // coordinates transform by P^T.
        IntMatrix X = unimodular_inverse(P).transpose();
        std::vector<IntVector> dual(r, IntVector(count(1)));
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t c = 0; c < r; ++c)
                if (!X(c, a).is_zero())
                    for (std::size_t i = 0; i < count(1); ++i)
                        dual[a][i] += G->free_generators_[c][i] * X(c, a);
        G->free_generators_ = std::move(dual);
        G->free_change_ = P.transpose();
    }
    return G;
}

const IntegerSolver& SimplicialComplex::multiple_solver(int k, const Integer& s) const
{
    GroupPtr G = cohomology(k);
    std::lock_guard lock(cache_mutex_);
    auto& slot = multiple_solvers_[{k, s}];
    if (!slot)
    {
        const std::vector<Cochain> gens = G->all_generators();
        const IntMatrix in = k >= 1 ? coboundary_matrix(*this, k - 1) : IntMatrix(count(k), 0);
        IntMatrix A(count(k), gens.size() + in.cols());
        for (std::size_t j = 0; j < gens.size(); ++j)
            for (std::size_t i = 0; i < count(k); ++i)
                A(i, j) = gens[j][i] * s;
        for (std::size_t j = 0; j < in.cols(); ++j)
            for (std::size_t i = 0; i < count(k); ++i)
                A(i, gens.size() + j) = in(i, j);
        slot = std::make_unique<IntegerSolver>(std::move(A));
    }
    return *slot;
}

std::vector<Chain> SimplicialComplex::cycle_basis(int k) const
{
    if (k < 0 || k > dimension())
        throw Error("cycle_basis: degree out of range");
    auto self_ptr = shared_from_this();
    if (k == 1 && !preferred_h1_.empty())
    {
        std::vector<Chain> out;
        for (const auto& c : preferred_h1_)
            out.emplace_back(self_ptr, 1, c);
        return out;
    }
    GroupPtr G = cohomology(k);
    std::lock_guard lock(cache_mutex_);
    auto it = cycle_bases_.find(k);
    if (it == cycle_bases_.end())
    {
        const IntMatrix out_map = k >= 1 ? boundary_matrix(*this, k) : IntMatrix(0, count(0));
        const IntMatrix in_map = k < dimension() ? boundary_matrix(*this, k + 1) : IntMatrix(count(k), 0);
        Subquotient q = subquotient(smith_normal_form(out_map), in_map);
        std::vector<IntVector> homology_free;
        for (std::size_t j = q.inner_rank; j < q.generators.cols(); ++j)
            homology_free.push_back(q.generators.column(j));

        const std::size_t r = homology_free.size();
        if (r != G->free_rank())
            throw Error("cycle_basis: homology and cohomology ranks disagree");
        IntMatrix P(r, r);
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = 0; b < r; ++b)
                P(a, b) = dot(G->free_generator(a).values(), homology_free[b]);
        IntMatrix Y = unimodular_inverse(P);
        std::vector<IntVector> cycles(r, IntVector(count(k)));
        for (std::size_t e = 0; e < r; ++e)
            for (std::size_t b = 0; b < r; ++b)
                if (!Y(b, e).is_zero())
                    for (std::size_t i = 0; i < count(k); ++i)
                        cycles[e][i] += homology_free[b][i] * Y(b, e);
        it = cycle_bases_.emplace(k, std::move(cycles)).first;
    }
    std::vector<Chain> out;
    for (const auto& c : it->second)
        out.emplace_back(self_ptr, k, c);
    return out;
}

// ---------------------------------------------------------------- free functions

IntMatrix boundary_matrix(const SimplicialComplex& X, int k)
{
    if (k < 1 || k > X.dimension())
        throw Error("boundary_matrix: degree " + std::to_string(k) + " out of range [1, " +
                    std::to_string(X.dimension()) + "]");
    IntMatrix B(X.count(k - 1), X.count(k));
    for (std::size_t j = 0; j < X.count(k); ++j)
    {
        const Simplex& s = X.simplex(k, j);
        for (std::size_t i = 0; i < s.size(); ++i)
            B(*X.index_of(drop_vertex(s, i)), j) = (i % 2 == 0) ? 1 : -1;
    }
    return B;
}

IntMatrix coboundary_matrix(const SimplicialComplex& X, int k)
{
    if (k < 0 || k > X.dimension())
        throw Error("coboundary_matrix: degree out of range");
    if (k == X.dimension())
        return IntMatrix(0, X.count(k));
    return boundary_matrix(X, k + 1).transpose();
}

GroupPtr cohomology(const ComplexPtr& X, int k)
{
    return X->cohomology(k);
}

CohomologyClass coordinates_of_cocycle(const Cochain& z)
{
    if (z.degree() < 0 || z.degree() > z.complex()->dimension())
        throw Error("coordinates_of_cocycle: degree out of range");
    return z.complex()->cohomology(z.degree())->coordinates(z);
}

std::optional<Cochain> is_coboundary(const Cochain& z)
{
    if (z.degree() < 1 || z.degree() > z.complex()->dimension())
        throw Error("is_coboundary: degree must lie in [1, dim]");
    if (!z.is_cocycle())
        throw Error("is_coboundary: input is not a cocycle");
    auto w = z.complex()->coboundary_solver(z.degree() - 1).solve(z.values());
    if (!w)
        return std::nullopt;
    return Cochain(z.complex(), z.degree() - 1, std::move(*w));
}

std::vector<Chain> cycle_basis(const ComplexPtr& X, int k)
{
    return X->cycle_basis(k);
}

Integer evaluate(const Cochain& z, const Chain& c)
{
    require_same_complex(z.complex(), c.complex(), "evaluate");
    if (z.degree() != c.degree())
        throw Error("evaluate: degree mismatch between cochain and chain");
    if (!c.is_cycle())
        throw Error("evaluate: chain is not a cycle");
    return dot(z.values(), c.coefficients());
}

bool is_multiple_class(const Cochain& z, const Integer& s)
{
    if (!z.is_cocycle())
        throw Error("is_multiple_class: input is not a cocycle");
    return z.complex()->multiple_solver(z.degree(), s).solve(z.values()).has_value();
}

} // namespace fibercov
