#include "bpu/invariants.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "bpu/page.hpp"

namespace bpu {

// ---------------------------------------------------------------------------
// coefficient ring
// ---------------------------------------------------------------------------

CoefficientRing CoefficientRing::for_rank(int n)
{
    if (n < 2)
        throw std::invalid_argument("CoefficientRing: need n >= 2");
    CoefficientRing r;
    r.n = n;
    Int m = n;
    for (Int d = 2; d * d <= m; ++d)
        while (m % d == 0) {
            if (r.primes.empty() || r.primes.back() != d)
                r.primes.push_back(d);
            m /= d;
        }
    if (m > 1)
        r.primes.push_back(m);
    if (n % 4 == 2)
        std::erase(r.primes, Int(2));
    return r;
}

bool CoefficientRing::admits(const Rat& q) const
{
    Int den = Int(boost::multiprecision::denominator(q));
    for (const Int& p : primes)
        if (den % p == 0)
            return false;
    return true;
}

bool CoefficientRing::is_unit(const Rat& q) const
{
    if (q == 0)
        return false;
    Int num = Int(boost::multiprecision::numerator(q));
    for (const Int& p : primes)
        if (num % p == 0)
            return false;
    return admits(q);
}

bool CoefficientRing::admits_all(const ChernPolynomialQ& p) const
{
    for (const auto& [m, c] : p.terms())
        if (!admits(c))
            return false;
    return true;
}

// ---------------------------------------------------------------------------
// constants
// ---------------------------------------------------------------------------

Constants constants(int n)
{
    if (n < 2)
        throw std::invalid_argument("constants: need n >= 2");
    Constants k;
    k.lambda = (n % 4 == 2) ? Int(n / 2) : Int(n);
    k.delta = (n % 4 == 2) ? 2 : 1;
    k.mu = (n % 8 == 4) ? 4 : (n % 8 == 0) ? 2 : 1;
    return k;
}

// ---------------------------------------------------------------------------
// invariant slices
// ---------------------------------------------------------------------------

InvariantBasis kn_basis(int n, int w)
{
    if (n < 2 || w < 0 || w > 6)
        throw std::invalid_argument("kn_basis: need n >= 2 and weight <= 6");
    InvariantBasis b;
    b.n = n;
    b.w = w;
    b.monomials = chern_basis(n, w);
    b.rows = kernel_lattice(d3(n, 0, 2 * w));
    return b;
}

std::vector<ChernPolynomial> InvariantBasis::polynomials() const
{
    std::vector<ChernPolynomial> out;
    for (std::size_t i = 0; i < rows.rows(); ++i)
        out.push_back(from_coordinates(rows.row(i), monomials));
    return out;
}

// ---------------------------------------------------------------------------
// generator construction
// ---------------------------------------------------------------------------

const ChernPolynomial& GeneratorSequence::at(int i) const
{
    static const ChernPolynomial zero;
    auto it = e.find(i);
    return it == e.end() ? zero : it->second;
}

ChernPolynomial GeneratorSequence::product(const std::vector<int>& parts) const
{
    ChernPolynomial p = ChernPolynomial::unit();
    for (int part : parts) {
        const ChernPolynomial& f = at(part);
        if (f.is_zero())
            return ChernPolynomial();
        p = p * f;
    }
    return p;
}

namespace {

std::vector<std::vector<int>> partitions_min2(int w, int max_part)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int rem, int mx) {
        if (rem == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(rem, mx); p >= 2; --p) {
            cur.push_back(p);
            rec(rem - p, p);
            cur.pop_back();
        }
    };
    rec(w, std::min(w, max_part));
    return out;
}

/// Lattice of weight-w products of the generators e_2..e_limit, as rows over
/// the weight-w monomial basis. Zero products are dropped.
IntMatrix product_lattice(const GeneratorSequence& gens, int w, int limit,
                          const std::vector<ChernMonomial>& basis)
{
    std::vector<std::vector<Int>> rows;
    for (const auto& parts : partitions_min2(w, limit)) {
        ChernPolynomial p = gens.product(parts);
        if (!p.is_zero())
            rows.push_back(coordinates(p, basis));
    }
    return rows.empty() ? IntMatrix(0, basis.size()) : IntMatrix::from_rows(rows);
}

} // namespace

GeneratorSequence construct_e(int n, int up_to)
{
    if (n < 2 || up_to < 2 || up_to > 6)
        throw std::invalid_argument("construct_e: need n >= 2 and 2 <= up_to <= 6");
    GeneratorSequence gens;
    gens.n = n;
    gens.consts = constants(n);

    for (int i = 2; i <= up_to; ++i) {
        if (i > n)
            continue; // e_i = 0 above the rank
        InvariantBasis K = kn_basis(n, i);
        IntMatrix prods = product_lattice(gens, i, i - 1, K.monomials);

        // quotient of the invariant slice by the product lattice
        std::vector<std::vector<Int>> rel_cols;
        for (std::size_t r = 0; r < prods.rows(); ++r) {
            auto a = solve_in_rows(K.rows, prods.row(r));
            if (!a)
                throw std::runtime_error("construct_e: product of generators left the invariant slice");
            rel_cols.push_back(std::move(*a));
        }
        std::size_t rank = K.rank();
        IntMatrix relmat(rank, rel_cols.size());
        for (std::size_t c = 0; c < rel_cols.size(); ++c)
            for (std::size_t r = 0; r < rank; ++r)
                relmat.at(r, c) = rel_cols[c][r];
        SmithDecomposition sd = snf(relmat);
        std::vector<Int> diag = sd.diagonal();
        diag.resize(rank, Int(0));
        std::size_t free_rank = static_cast<std::size_t>(
            std::count(diag.begin(), diag.end(), Int(0)));
        if (free_rank != 1)
            throw std::runtime_error("construct_e: weight-" + std::to_string(i)
                                     + " quotient has free rank " + std::to_string(free_rank)
                                     + " (expected 1) at n = " + std::to_string(n));

        // lift of the free generator, in ambient monomial coordinates
        std::size_t free_idx = 0;
        while (free_idx < rank && diag[free_idx] != 0)
            ++free_idx;
        std::vector<Int> unit(rank, Int(0));
        unit[free_idx] = 1;
        auto z = solve_in_rows(sd.u.transposed(), unit);
        if (!z)
            throw std::logic_error("construct_e: SNF transform not invertible");
        std::vector<Int> amb(K.monomials.size(), Int(0));
        for (std::size_t k = 0; k < rank; ++k)
            if ((*z)[k] != 0)
                for (std::size_t j = 0; j < K.monomials.size(); ++j)
                    amb[j] += (*z)[k] * K.rows.at(k, j);

        // saturation of the product lattice inside the slice: the kernel of
        // the projection to the free summand, spanned by the non-free lifts
        std::vector<std::vector<Int>> sat_rows;
        for (std::size_t k = 0; k < rank; ++k) {
            if (k == free_idx)
                continue;
            std::vector<Int> ek(rank, Int(0));
            ek[k] = 1;
            auto zz = solve_in_rows(sd.u.transposed(), ek);
            std::vector<Int> row(K.monomials.size(), Int(0));
            for (std::size_t q = 0; q < rank; ++q)
                if ((*zz)[q] != 0)
                    for (std::size_t j = 0; j < K.monomials.size(); ++j)
                        row[j] += (*zz)[q] * K.rows.at(q, j);
            sat_rows.push_back(std::move(row));
        }

        // canonical choice: positive coefficient on the pure monomial c_i,
        // then reduce modulo the saturated product lattice
        ChernMonomial pure({i});
        auto pit = std::find(K.monomials.begin(), K.monomials.end(), pure);
        std::size_t pix = static_cast<std::size_t>(pit - K.monomials.begin());
        if (amb[pix] == 0)
            throw std::runtime_error("construct_e: generator lift has no c_" + std::to_string(i)
                                     + " term at n = " + std::to_string(n));
        if (amb[pix] < 0)
            for (auto& x : amb)
                x = -x;
        if (!sat_rows.empty())
            amb = reduce_mod_lattice(IntMatrix::from_rows(sat_rows), std::move(amb));

        gens.e[i] = from_coordinates(amb, K.monomials);
        gens.provenance[i] = "constructed";
    }
    return gens;
}

GeneratorSequence with_published_formulas(GeneratorSequence gens)
{
    int n = gens.n;
    auto swap_in = [&](int i, ChernPolynomial p) {
        if (i > n)
            return;
        gens.e[i] = std::move(p);
        gens.provenance[i] = "published-formula";
    };
    swap_in(2, published_e2(n));
    swap_in(3, published_e3(n));
    swap_in(4, published_e4(n));
    return gens;
}

// ---------------------------------------------------------------------------
// degree-12 quotient and relation
// ---------------------------------------------------------------------------

namespace {

const std::vector<std::vector<int>> ideal_parts{{4, 2}, {3, 3}, {2, 2, 2}, {6}};

struct IdealData {
    std::vector<std::string> names;        // aligned with rows
    std::vector<std::vector<Int>> rows;    // coordinates over the weight-6 basis
};

IdealData ideal_generators(const GeneratorSequence& gens, const std::vector<ChernMonomial>& basis)
{
    IdealData d;
    static const std::vector<std::string> names{"e4e2", "e3^2", "e2^3", "e6"};
    for (std::size_t i = 0; i < ideal_parts.size(); ++i) {
        ChernPolynomial p = gens.product(ideal_parts[i]);
        if (p.is_zero())
            continue;
        d.names.push_back(names[i]);
        d.rows.push_back(coordinates(p, basis));
    }
    return d;
}

} // namespace

FgAbGroup quotient_K12(int n)
{
    return quotient_K12(n, construct_e(n));
}

FgAbGroup quotient_K12(int n, const GeneratorSequence& gens)
{
    InvariantBasis K = kn_basis(n, 6);
    IdealData ideal = ideal_generators(gens, K.monomials);
    std::vector<std::vector<Int>> rel_cols;
    for (const auto& row : ideal.rows) {
        auto a = solve_in_rows(K.rows, row);
        if (!a)
            throw std::runtime_error("quotient_K12: ideal generator outside the invariant slice");
        rel_cols.push_back(std::move(*a));
    }
    IntMatrix relmat(K.rank(), rel_cols.size());
    for (std::size_t c = 0; c < rel_cols.size(); ++c)
        for (std::size_t r = 0; r < K.rank(); ++r)
            relmat.at(r, c) = rel_cols[c][r];
    FgAbGroup q(K.rank(), std::move(relmat));

    Int want = gens.consts.lambda * gens.consts.lambda * gens.consts.lambda;
    bool cyclic_ok = q.free_rank() == 0 && q.invariant_factors().size() <= 1;
    Int order = q.torsion_order();
    if (!cyclic_ok || order != want)
        throw std::runtime_error("quotient_K12: expected a cyclic group of order lambda^3 = "
                                 + want.str() + " at n = " + std::to_string(n) + ", got "
                                 + q.describe());
    return q;
}

RelationWitness solve_relation(int n)
{
    GeneratorSequence gens = construct_e(n);
    InvariantBasis K = kn_basis(n, 6);
    IdealData ideal = ideal_generators(gens, K.monomials);
    IntMatrix ideal_rows = ideal.rows.empty() ? IntMatrix(0, K.monomials.size())
                                              : IntMatrix::from_rows(ideal.rows);

    // canonical lift of a generator of the cyclic quotient
    LatticeQuotient q(K.rows, ideal_rows);
    ChernPolynomial alpha;
    if (!q.group().is_trivial())
        alpha = from_coordinates(q.representatives().front(), K.monomials);

    return solve_relation(n, gens, alpha);
}

RelationWitness solve_relation(int n, const GeneratorSequence& gens, const ChernPolynomial& alpha6)
{
    InvariantBasis K = kn_basis(n, 6);
    IdealData ideal = ideal_generators(gens, K.monomials);
    IntMatrix ideal_rows = ideal.rows.empty() ? IntMatrix(0, K.monomials.size())
                                              : IntMatrix::from_rows(ideal.rows);

    RelationWitness w;
    w.alpha6 = alpha6;
    const Int& lam = gens.consts.lambda;
    w.modulus = lam * lam * lam;

    std::vector<Int> target = coordinates(alpha6, K.monomials);
    for (auto& x : target)
        x *= w.modulus;
    auto coef = solve_in_rows(ideal_rows, target);
    if (!coef)
        throw std::runtime_error("solve_relation: lambda^3 * alpha6 is not an integral combination "
                                 "of the relation generators at n = " + std::to_string(n));

    auto coeff_of = [&](const std::string& name) -> Int {
        for (std::size_t i = 0; i < ideal.names.size(); ++i)
            if (ideal.names[i] == name)
                return (*coef)[i];
        return 0;
    };
    w.b = coeff_of("e4e2");
    w.c = coeff_of("e3^2");
    w.d = coeff_of("e2^3");
    w.f = coeff_of("e6");

    if (w.f != 0) {
        // lifts of the same class differ by ideal elements; shifting alpha6
        // by u*e6 moves f by modulus*u
        if (w.f % w.modulus == 0) {
            Int u = w.f / w.modulus;
            ChernPolynomial e6 = gens.at(6);
            w.alpha6 -= u * e6;
            w.f = 0;
        } else {
            w.f_cleared = false;
        }
    }

    // the witness identity must hold exactly
    ChernPolynomial lhs = w.modulus * w.alpha6;
    ChernPolynomial rhs = w.b * gens.product({4, 2}) + w.c * gens.product({3, 3})
                          + w.d * gens.product({2, 2, 2}) + w.f * gens.product({6});
    if (lhs != rhs)
        throw std::logic_error("solve_relation: witness identity failed to verify");
    return w;
}

std::string RelationWitness::to_json(int n) const
{
    std::ostringstream os;
    os << "{\"m\":" << modulus.str() << ",\"b\":" << b.str() << ",\"c\":" << c.str()
       << ",\"d\":" << d.str() << ",\"f\":" << f.str()
       << ",\"f_cleared\":" << (f_cleared ? "true" : "false")
       << ",\"alpha6\":" << chern_poly_json(alpha6, n) << "}";
    return os.str();
}

// ---------------------------------------------------------------------------
// explicit formulas
// ---------------------------------------------------------------------------

namespace {

ChernPolynomial int_poly(int n, std::initializer_list<std::pair<std::vector<int>, Rat>> terms)
{
    ChernPolynomialQ q;
    for (const auto& [parts, c] : terms)
        q.add(ChernMonomial(parts), c);
    return to_integral(q.truncated(n));
}

Int g(long a, long b) { return gcd(Int(a), Int(b)); }

} // namespace

ChernPolynomial published_e2(int n)
{
    Int d = g(2, n - 1);
    return int_poly(n, {{{2}, Rat(Int(2 * n), d)}, {{1, 1}, Rat(Int(1 - n), d)}});
}

ChernPolynomial published_e3(int n)
{
    Int d = g(3, n - 1) * g(3, n - 2) * g(4, n - 2);
    return int_poly(n, {{{3}, Rat(Int(3) * n * n, d)},
                        {{2, 1}, Rat(Int(-3) * n * (n - 2), d)},
                        {{1, 1, 1}, Rat(Int(n - 1) * (n - 2), d)}});
}

ChernPolynomial published_e4(int n)
{
    Int d = g(3, n);
    Int nn = n;
    return int_poly(n, {{{4}, Rat(nn, d)},
                        {{3, 1}, Rat(-(nn - 3), d)},
                        {{2, 2}, Rat(-(nn * nn + nn + 1) * (nn - 2) * (nn - 3), 2 * d)},
                        {{2, 1, 1}, Rat(nn * nn * (nn - 2) * (nn - 3), 2 * d)},
                        {{1, 1, 1, 1}, Rat(-nn * (nn - 1) * (nn - 2) * (nn - 3), 8 * d)}});
}

ChernPolynomialQ published_beta6(int n)
{
    if (n < 3)
        throw std::invalid_argument("published_beta6: defined for n >= 3");
    Int nn = n;
    Rat pre(g(3, n), g(2, n) * g(2, n));
    ChernPolynomialQ p;
    p.add(ChernMonomial({3, 3}), pre * Rat(nn * nn));
    p.add(ChernMonomial({3, 2, 1}), pre * Rat(Int(-2) * nn * (nn - 2)));
    p.add(ChernMonomial({2, 2, 2}), pre * Rat(Int(8) * nn * (nn - 2) * (nn - 2), Int(9) * (nn - 1)));
    p.add(ChernMonomial({3, 1, 1, 1}), pre * Rat(Int(2) * (nn - 1) * (nn - 2), Int(3)));
    p.add(ChernMonomial({2, 2, 1, 1}), pre * Rat(-(nn - 2) * (nn - 2), Int(3)));
    return p.truncated(n);
}

ChernPolynomialQ published_alpha6(int n)
{
    if (n < 4)
        throw std::invalid_argument("published_alpha6: defined for n >= 4");
    Int nn = n;
    Rat pre(1, g(2, n - 1));
    ChernPolynomialQ p;
    p.add(ChernMonomial({4, 2}), pre * Rat(Int(2) * nn));
    p.add(ChernMonomial({4, 1, 1}), pre * Rat(-(nn - 1)));
    p.add(ChernMonomial({3, 3}), pre * Rat(Int(-3) * nn * (nn - 3), Int(2) * (nn - 2)));
    p.add(ChernMonomial({3, 2, 1}), pre * Rat(nn - 3));
    p.add(ChernMonomial({2, 2, 2}), pre * Rat(-(nn - 2) * (nn - 3), Int(3) * (nn - 1)));
    return p.truncated(n);
}

ChernPolynomial example_alpha6_rank5()
{
    ChernPolynomial p;
    p.add(ChernMonomial({4, 2}), 5);
    p.add(ChernMonomial({4, 1, 1}), -2);
    p.add(ChernMonomial({3, 3}), -15);
    p.add(ChernMonomial({3, 2, 1}), 16);
    p.add(ChernMonomial({2, 2, 2}), 26);
    p.add(ChernMonomial({3, 1, 1, 1}), -4);
    p.add(ChernMonomial({2, 2, 1, 1}), -36);
    p.add(ChernMonomial({2, 1, 1, 1, 1}), 15);
    p.add(ChernMonomial({1, 1, 1, 1, 1, 1}), -2);
    return p;
}

// ---------------------------------------------------------------------------
// verification battery
// ---------------------------------------------------------------------------

namespace {

using Status = FormulaReport::Status;

void push(FormulaReport& rep, const std::string& name, Status st, std::string note = "")
{
    rep.checks.push_back({name, st, std::move(note)});
}

void check_bool(FormulaReport& rep, const std::string& name, bool ok, std::string note = "")
{
    push(rep, name, ok ? Status::pass : Status::fail, std::move(note));
}

/// Restriction of the weight-6 invariant slice to monomials with parts <=
/// max_part, as a saturated sublattice over the full weight-6 basis.
IntMatrix restricted_k12(int n, int max_part, const std::vector<ChernMonomial>& basis)
{
    IntMatrix full = d3_matrix(n, 0, 12);
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis[i].max_part() <= max_part)
            keep.push_back(i);
    IntMatrix sub(keep.size(), full.cols());
    for (std::size_t r = 0; r < keep.size(); ++r)
        for (std::size_t c = 0; c < full.cols(); ++c)
            sub.at(r, c) = full.at(keep[r], c);
    IntMatrix ker = left_kernel(sub);
    IntMatrix out(ker.rows(), basis.size());
    for (std::size_t r = 0; r < ker.rows(); ++r)
        for (std::size_t c = 0; c < keep.size(); ++c)
            out.at(r, keep[c]) = ker.at(r, c);
    return out;
}

/// Rational solve: x * rows = v; returns coefficients when consistent.
std::optional<std::vector<Rat>> solve_rat_rows(const std::vector<std::vector<Rat>>& rows,
                                               const std::vector<Rat>& v)
{
    std::size_t m = rows.size(), nn = v.size();
    // Gaussian elimination on the transposed system
    std::vector<std::vector<Rat>> aug(nn, std::vector<Rat>(m + 1));
    for (std::size_t j = 0; j < nn; ++j) {
        for (std::size_t i = 0; i < m; ++i)
            aug[j][i] = rows[i][j];
        aug[j][m] = v[j];
    }
    std::size_t r = 0;
    std::vector<std::size_t> piv_cols;
    for (std::size_t c = 0; c < m && r < nn; ++c) {
        std::size_t p = r;
        while (p < nn && aug[p][c] == 0)
            ++p;
        if (p == nn)
            continue;
        std::swap(aug[r], aug[p]);
        Rat pv = aug[r][c];
        for (auto& x : aug[r])
            x /= pv;
        for (std::size_t i = 0; i < nn; ++i)
            if (i != r && aug[i][c] != 0) {
                Rat f = aug[i][c];
                for (std::size_t k = 0; k <= m; ++k)
                    aug[i][k] -= f * aug[r][k];
            }
        piv_cols.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < nn; ++i)
        if (aug[i][m] != 0)
            return std::nullopt;
    std::vector<Rat> a(m, Rat(0));
    for (std::size_t k = 0; k < piv_cols.size(); ++k)
        a[piv_cols[k]] = aug[k][m];
    return a;
}

std::vector<Rat> rat_coordinates(const ChernPolynomialQ& p, const std::vector<ChernMonomial>& basis)
{
    std::vector<Rat> v(basis.size(), Rat(0));
    for (const auto& [m, c] : p.terms()) {
        auto it = std::find(basis.begin(), basis.end(), m);
        if (it == basis.end())
            throw std::invalid_argument("rat_coordinates: monomial outside basis");
        v[static_cast<std::size_t>(it - basis.begin())] = c;
    }
    return v;
}

/// Equality of spans over the coefficient ring: each side expresses the
/// other with admissible coefficients.
bool k_span_equal(const CoefficientRing& ring, const std::vector<std::vector<Rat>>& a,
                  const std::vector<std::vector<Rat>>& b)
{
    auto contained = [&](const std::vector<std::vector<Rat>>& x,
                         const std::vector<std::vector<Rat>>& y) {
        for (const auto& v : x) {
            auto sol = solve_rat_rows(y, v);
            if (!sol)
                return false;
            for (const Rat& c : *sol)
                if (!ring.admits(c))
                    return false;
        }
        return true;
    };
    return contained(a, b) && contained(b, a);
}

std::vector<std::vector<Rat>> to_rat_rows(const IntMatrix& m)
{
    std::vector<std::vector<Rat>> out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::vector<Rat> r(m.cols());
        for (std::size_t j = 0; j < m.cols(); ++j)
            r[j] = Rat(m.at(i, j));
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace

bool FormulaReport::all_passed() const
{
    return std::none_of(checks.begin(), checks.end(),
                        [](const Check& c) { return c.status == Status::fail; });
}

std::string FormulaReport::to_json() const
{
    std::ostringstream os;
    os << "{\"n\":" << n << ",\"formula_checks\":[";
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const char* st = checks[i].status == Status::pass ? "pass"
                         : checks[i].status == Status::fail ? "fail" : "skipped";
        os << (i ? "," : "") << "{\"name\":\"" << checks[i].name << "\",\"pass\":"
           << (checks[i].status != Status::fail ? "true" : "false") << ",\"status\":\"" << st
           << "\"";
        if (!checks[i].note.empty())
            os << ",\"note\":\"" << checks[i].note << "\"";
        os << "}";
    }
    os << "]}";
    return os.str();
}

FormulaReport verify_formulas(int n)
{
    if (n < 2)
        throw std::invalid_argument("verify_formulas: need n >= 2");
    FormulaReport rep;
    rep.n = n;
    CoefficientRing ring = CoefficientRing::for_rank(n);

    ChernPolynomial e2 = published_e2(n);
    check_bool(rep, "nabla(e2) = 0", divergence(e2, n).is_zero());
    check_bool(rep, "e2 leading coefficient", e2.coeff(ChernMonomial({2})) == Int(2 * n) / g(2, n - 1));

    if (n >= 3) {
        ChernPolynomial e3 = published_e3(n);
        check_bool(rep, "nabla(e3) = 0", divergence(e3, n).is_zero());
        Int d3g = g(3, n - 1) * g(3, n - 2) * g(4, n - 2);
        check_bool(rep, "e3 leading coefficient", e3.coeff(ChernMonomial({3})) == Int(3) * n * n / d3g);
    } else {
        push(rep, "nabla(e3) = 0", Status::skipped, "e3 = 0 for n < 3");
    }

    if (n >= 4) {
        ChernPolynomial e4 = published_e4(n);
        check_bool(rep, "nabla(e4) = 0", divergence(e4, n).is_zero());
        check_bool(rep, "e4 leading coefficient", e4.coeff(ChernMonomial({4})) == Int(n) / g(3, n));
    } else {
        push(rep, "nabla(e4) = 0", Status::skipped, "e4 = 0 for n < 4");
    }

    std::vector<ChernMonomial> basis6 = chern_basis(n, 6);
    ChernPolynomial e2cubed = published_e2(n) * published_e2(n) * published_e2(n);

    bool have_beta = n >= 3;
    ChernPolynomialQ beta6;
    if (have_beta) {
        beta6 = published_beta6(n);
        if (!ring.admits_all(beta6)) {
            push(rep, "beta6 checks", Status::skipped, "denominator not admissible");
            have_beta = false;
        } else {
            check_bool(rep, "nabla(beta6) = 0", divergence(beta6, n).is_zero());
            check_bool(rep, "beta6 leading coefficient",
                       beta6.coeff(ChernMonomial({3, 3}))
                           == Rat(g(3, n) * n * n, g(2, n) * g(2, n)));
        }
    } else {
        push(rep, "beta6 checks", Status::skipped, "beta6 degenerate for n < 3");
    }

    bool have_alpha = n >= 4;
    ChernPolynomialQ alpha6;
    if (have_alpha) {
        alpha6 = published_alpha6(n);
        if (!ring.admits_all(alpha6)) {
            push(rep, "alpha6 checks", Status::skipped, "denominator not admissible");
            have_alpha = false;
        } else {
            check_bool(rep, "nabla(alpha6) = 0", divergence(alpha6, n).is_zero());
            check_bool(rep, "alpha6 leading coefficient",
                       alpha6.coeff(ChernMonomial({4, 2})) == Rat(Int(2) * n, g(2, n - 1)));
        }
    } else {
        push(rep, "alpha6 checks", Status::skipped, "alpha6 degenerate for n < 4");
    }

    // span claims over the coefficient ring
    if (have_beta) {
        std::vector<std::vector<Rat>> span{rat_coordinates(beta6, basis6),
                                           rat_coordinates(to_rational(e2cubed), basis6)};
        IntMatrix kz = restricted_k12(n, 3, basis6);
        check_bool(rep, "degree-12 span in c1..c3 = {beta6, e2^3}",
                   k_span_equal(ring, span, to_rat_rows(kz)));
    }
    if (have_alpha && have_beta) {
        std::vector<std::vector<Rat>> span{rat_coordinates(alpha6, basis6),
                                           rat_coordinates(beta6, basis6),
                                           rat_coordinates(to_rational(e2cubed), basis6)};
        IntMatrix kz = restricted_k12(n, 4, basis6);
        check_bool(rep, "degree-12 span in c1..c4 = {alpha6, beta6, e2^3}",
                   k_span_equal(ring, span, to_rat_rows(kz)));
    }

    const Int lam = constants(n).lambda;

    // e3^2 = gcd(3,n) lambda^2 beta6 + b1 e2^3 for some admissible b1
    if (have_beta && n >= 3) {
        ChernPolynomialQ lhs = to_rational(published_e3(n) * published_e3(n));
        ChernPolynomialQ mid = Rat(g(3, n) * lam * lam) * beta6;
        ChernPolynomialQ diff = lhs - mid;
        auto sol = solve_rat_rows({rat_coordinates(to_rational(e2cubed), basis6)},
                                  rat_coordinates(diff, basis6));
        bool ok = sol.has_value() && ring.admits((*sol)[0]);
        check_bool(rep, "witness b1 for e3^2 relation", ok,
                   ok ? "b1 = " + (*sol)[0].str() : "");
    }

    // (lambda/n) e4 e2 = (lambda/gcd(3,n)) alpha6 + b2 beta6 + b3 e2^3
    if (have_alpha && have_beta && n >= 4) {
        ChernPolynomialQ lhs = Rat(lam, Int(n)) * to_rational(published_e4(n) * published_e2(n));
        ChernPolynomialQ rhs0 = Rat(lam, g(3, n)) * alpha6;
        ChernPolynomialQ diff = lhs - rhs0;
        auto sol = solve_rat_rows({rat_coordinates(beta6, basis6),
                                   rat_coordinates(to_rational(e2cubed), basis6)},
                                  rat_coordinates(diff, basis6));
        bool ok = sol.has_value() && ring.admits((*sol)[0]) && ring.admits((*sol)[1]);
        check_bool(rep, "witnesses b2, b3 for e4e2 relation", ok,
                   ok ? "b2 = " + (*sol)[0].str() + ", b3 = " + (*sol)[1].str() : "");
    }

    return rep;
}

} // namespace bpu
