#include "bpu/abelian.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bpu {

FgAbGroup::FgAbGroup(std::size_t generator_count, IntMatrix relation_columns,
                     std::vector<std::string> labels)
    : gens_(generator_count), relations_(std::move(relation_columns)), labels_(std::move(labels))
{
    if (relations_.rows() == 0 && relations_.cols() == 0)
        relations_ = IntMatrix(gens_, 0);
    if (relations_.rows() != gens_)
        throw std::invalid_argument("FgAbGroup: relation matrix must have one row per generator");
    if (!labels_.empty() && labels_.size() != gens_)
        throw std::invalid_argument("FgAbGroup: label count mismatch");

    auto d = snf(relations_).diagonal();
    std::size_t nonzero = 0;
    for (const Int& x : d) {
        if (x != 0) {
            ++nonzero;
            if (x > 1)
                invariant_factors_.push_back(x);
        }
    }
    free_rank_ = gens_ - nonzero;
}

FgAbGroup FgAbGroup::free_group(std::size_t rank, std::vector<std::string> labels)
{
    return FgAbGroup(rank, IntMatrix(rank, 0), std::move(labels));
}

Int FgAbGroup::torsion_order() const
{
    Int o = 1;
    for (const Int& d : invariant_factors_)
        o *= d;
    return o;
}

bool FgAbGroup::same_structure(const FgAbGroup& other) const
{
    return free_rank_ == other.free_rank_ && invariant_factors_ == other.invariant_factors_;
}

std::string FgAbGroup::describe() const
{
    if (is_trivial())
        return "0";
    std::ostringstream os;
    bool first = true;
    if (free_rank_ > 0) {
        os << "Z";
        if (free_rank_ > 1)
            os << "^" << free_rank_;
        first = false;
    }
    for (const Int& d : invariant_factors_) {
        os << (first ? "" : " + ") << "Z/" << d.str();
        first = false;
    }
    return os.str();
}

GroupMap::GroupMap(FgAbGroup domain, FgAbGroup codomain, IntMatrix matrix)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix))
{
    if (matrix_.rows() != domain_.generator_count() || matrix_.cols() != codomain_.generator_count())
        throw std::invalid_argument("GroupMap: matrix shape does not match groups");
    // well-definedness: each domain relation maps into the codomain relation lattice
    const IntMatrix& rel = domain_.relation_matrix();
    IntMatrix codrel = codomain_.relation_matrix().transposed(); // rows = relations
    for (std::size_t c = 0; c < rel.cols(); ++c) {
        std::vector<Int> image(codomain_.generator_count(), Int(0));
        for (std::size_t g = 0; g < domain_.generator_count(); ++g) {
            if (rel.at(g, c) == 0)
                continue;
            for (std::size_t j = 0; j < codomain_.generator_count(); ++j)
                image[j] += rel.at(g, c) * matrix_.at(g, j);
        }
        if (!solve_in_rows(codrel, image))
            throw std::invalid_argument("GroupMap: image of a relation is not a codomain relation");
    }
}

GroupMap GroupMap::zero(FgAbGroup domain, FgAbGroup codomain)
{
    IntMatrix m(domain.generator_count(), codomain.generator_count());
    return GroupMap(std::move(domain), std::move(codomain), std::move(m));
}

IntMatrix kernel_lattice(const GroupMap& m)
{
    if (m.domain().relation_matrix().cols() != 0 || m.codomain().relation_matrix().cols() != 0)
        throw std::invalid_argument("kernel_lattice: domain and codomain must be free");
    return left_kernel(m.matrix());
}

std::pair<std::size_t, std::vector<Int>> group_structure(const FgAbGroup& g)
{
    return {g.free_rank(), g.invariant_factors()};
}

// ---------------------------------------------------------------------------
// LatticeQuotient
// ---------------------------------------------------------------------------

namespace {

/// Solve u * x = e_i for unimodular u (column i of u^{-1}).
std::vector<Int> unimodular_solve(const IntMatrix& u, std::size_t i)
{
    std::vector<Int> e(u.rows(), Int(0));
    e[i] = 1;
    auto x = solve_in_rows(u.transposed(), e);
    if (!x)
        throw std::logic_error("unimodular_solve: matrix not invertible over ZZ");
    return *x;
}

} // namespace

LatticeQuotient::LatticeQuotient(IntMatrix cycles, IntMatrix boundary_rows)
    : ambient_(cycles.cols()), cycles_(row_basis(cycles))
{
    if (boundary_rows.rows() > 0 && boundary_rows.cols() != ambient_)
        throw std::invalid_argument("LatticeQuotient: ambient dimension mismatch");
    for (std::size_t i = 0; i < boundary_rows.rows(); ++i) {
        auto r = boundary_rows.row(i);
        if (std::any_of(r.begin(), r.end(), [](const Int& x) { return x != 0; })) {
            if (!contains_cycle(r))
                throw std::invalid_argument("LatticeQuotient: boundary outside the cycle lattice");
            boundaries_.push_back(std::move(r));
        }
    }
}

bool LatticeQuotient::contains_cycle(const std::vector<Int>& v) const
{
    return lattice_contains(cycles_, v);
}

bool LatticeQuotient::class_is_zero(const std::vector<Int>& v) const
{
    if (!contains_cycle(v))
        throw std::invalid_argument("LatticeQuotient: vector is not a cycle");
    if (boundaries_.empty())
        return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
    return lattice_contains(IntMatrix::from_rows(boundaries_), v);
}

void LatticeQuotient::add_boundary(std::vector<Int> v)
{
    if (!contains_cycle(v))
        throw std::invalid_argument("LatticeQuotient: new boundary is not a cycle");
    boundaries_.push_back(std::move(v));
    dirty_ = true;
}

void LatticeQuotient::collapse()
{
    boundaries_.clear();
    for (std::size_t i = 0; i < cycles_.rows(); ++i)
        boundaries_.push_back(cycles_.row(i));
    dirty_ = true;
}

const FgAbGroup& LatticeQuotient::group() const
{
    refresh();
    return group_;
}

const std::vector<std::vector<Int>>& LatticeQuotient::representatives() const
{
    refresh();
    return reps_;
}

void LatticeQuotient::refresh() const
{
    if (!dirty_)
        return;
    std::size_t rank = cycles_.rows();
    IntMatrix bnd = boundaries_.empty() ? IntMatrix(0, ambient_) : IntMatrix::from_rows(boundaries_);
    IntMatrix bnd_h = row_basis(bnd);

    // relations in cycle coordinates, one column per boundary basis row
    IntMatrix relmat(rank, bnd_h.rows());
    for (std::size_t c = 0; c < bnd_h.rows(); ++c) {
        auto a = solve_in_rows(cycles_, bnd_h.row(c));
        if (!a)
            throw std::logic_error("LatticeQuotient: boundary escaped the cycle lattice");
        for (std::size_t i = 0; i < rank; ++i)
            relmat.at(i, c) = (*a)[i];
    }
    SmithDecomposition sd = snf(relmat);
    std::vector<Int> diag = sd.diagonal();
    diag.resize(rank, Int(0));

    std::vector<Int> factors;
    std::vector<std::vector<Int>> reps;
    std::size_t free_rank = 0;
    for (std::size_t i = 0; i < rank; ++i) {
        if (diag[i] == 1)
            continue;
        if (diag[i] > 1)
            factors.push_back(diag[i]);
        else
            ++free_rank;
        // generator lift: column i of u^{-1}, taken back to ambient coordinates
        std::vector<Int> z = unimodular_solve(sd.u, i);
        std::vector<Int> amb(ambient_, Int(0));
        for (std::size_t k = 0; k < rank; ++k)
            if (z[k] != 0)
                for (std::size_t j = 0; j < ambient_; ++j)
                    amb[j] += z[k] * cycles_.at(k, j);
        reps.push_back(reduce_mod_lattice_colex(bnd, std::move(amb)));
    }

    IntMatrix rel(factors.size() + free_rank, factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i)
        rel.at(i, i) = factors[i];
    group_ = FgAbGroup(factors.size() + free_rank, std::move(rel));
    reps_ = std::move(reps);
    dirty_ = false;
}

void LatticeQuotient::drop_odd_torsion()
{
    refresh();
    bool extended = false;
    const auto& factors = group_.invariant_factors();
    // reps_ lists torsion generators first, in invariant-factor order
    for (std::size_t i = 0; i < factors.size(); ++i) {
        Int two = p_part(factors[i], 2);
        if (two == factors[i])
            continue;
        std::vector<Int> v = reps_[i];
        for (auto& x : v)
            x *= two;
        boundaries_.push_back(std::move(v));
        extended = true;
    }
    if (extended)
        dirty_ = true;
}

// ---------------------------------------------------------------------------
// homology
// ---------------------------------------------------------------------------

namespace {

std::vector<std::vector<Int>> relation_rows(const FgAbGroup& g)
{
    std::vector<std::vector<Int>> out;
    const IntMatrix& rel = g.relation_matrix();
    for (std::size_t c = 0; c < rel.cols(); ++c) {
        std::vector<Int> row(g.generator_count());
        for (std::size_t i = 0; i < g.generator_count(); ++i)
            row[i] = rel.at(i, c);
        out.push_back(std::move(row));
    }
    return out;
}

} // namespace

LatticeQuotient homology_lattices(const GroupMap& d_in, const GroupMap& d_out, Localization loc)
{
    const FgAbGroup& mid = d_out.domain();
    if (d_in.codomain().generator_count() != mid.generator_count()
        || d_in.codomain().relation_matrix() != mid.relation_matrix())
        throw std::invalid_argument("homology: maps are not composable");

    // the composite must vanish on generators modulo codomain relations
    {
        IntMatrix comp = d_in.matrix() * d_out.matrix();
        IntMatrix codrel = d_out.codomain().relation_matrix().transposed();
        for (std::size_t i = 0; i < comp.rows(); ++i)
            if (!solve_in_rows(codrel, comp.row(i)))
                throw std::invalid_argument("homology: composite differential is nonzero");
    }

    std::size_t g = mid.generator_count();

    // cycles: { x : x * Mout lies in the codomain relation lattice }
    IntMatrix cycles(0, g);
    const FgAbGroup& tgt = d_out.codomain();
    if (g > 0) {
        if (tgt.generator_count() == 0)
            cycles = IntMatrix::identity(g);
        else {
            std::vector<std::vector<Int>> block;
            for (std::size_t i = 0; i < g; ++i)
                block.push_back(d_out.matrix().row(i));
            for (auto& r : relation_rows(tgt))
                block.push_back(std::move(r));
            IntMatrix ker = left_kernel(IntMatrix::from_rows(block));
            std::vector<std::vector<Int>> xs;
            for (std::size_t i = 0; i < ker.rows(); ++i) {
                std::vector<Int> x(g);
                for (std::size_t j = 0; j < g; ++j)
                    x[j] = ker.at(i, j);
                xs.push_back(std::move(x));
            }
            if (!xs.empty())
                cycles = IntMatrix::from_rows(xs);
        }
    }

    // boundaries: image rows of d_in plus the middle group's relations
    std::vector<std::vector<Int>> bnds;
    for (std::size_t i = 0; i < d_in.matrix().rows(); ++i)
        bnds.push_back(d_in.matrix().row(i));
    for (auto& r : relation_rows(mid))
        bnds.push_back(std::move(r));

    LatticeQuotient q(std::move(cycles),
                      bnds.empty() ? IntMatrix(0, g) : IntMatrix::from_rows(bnds));
    if (loc == Localization::two_local)
        q.drop_odd_torsion();
    return q;
}

HomologyResult homology(const GroupMap& d_in, const GroupMap& d_out, Localization loc)
{
    LatticeQuotient q = homology_lattices(d_in, d_out, loc);
    return {q.group(), q.representatives()};
}

std::vector<Int> p_primary(const FgAbGroup& g, const Int& p)
{
    if (!is_prime(p))
        throw std::invalid_argument("p_primary: p is not prime");
    std::vector<Int> out;
    for (const Int& d : g.invariant_factors()) {
        Int pp = p_part(d, p);
        if (pp > 1)
            out.push_back(pp);
    }
    return out;
}

} // namespace bpu
