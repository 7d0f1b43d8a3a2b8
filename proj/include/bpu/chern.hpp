#ifndef BPU_CHERN_HPP
#define BPU_CHERN_HPP

#include <map>
#include <string>
#include <vector>

#include "bpu/integers.hpp"

namespace bpu {

/**
 * Monomial in the Chern classes c_1..c_n, stored as the partition of its
 * weight given by the indices (descending, so c4*c1^2 is {4,1,1}).
 * Weight sum(parts) corresponds to cohomological degree 2*weight.
 */
struct ChernMonomial {
    std::vector<int> parts; // descending

    ChernMonomial() = default;
    explicit ChernMonomial(std::vector<int> p);

    int weight() const;
    int max_part() const { return parts.empty() ? 0 : parts[0]; }
    bool is_unit() const { return parts.empty(); }

    /// Exponent vector (k_1..k_n); requires max_part() <= n.
    std::vector<int> exponents(int n) const;

    /// "c4*c1^2", "1" for the empty monomial.
    std::string str() const;

    bool operator==(const ChernMonomial&) const = default;
};

/// Product of two monomials (multiset union of parts).
ChernMonomial operator*(const ChernMonomial& a, const ChernMonomial& b);

/**
 * The canonical basis order: fewer parts first, then partitions in
 * descending lexicographic order (largest first). Weight-6 monomials come
 * out as c6, c5c1, c4c2, c3^2, c4c1^2, c3c2c1, c2^3, c3c1^3, c2^2c1^2,
 * c2c1^4, c1^6.
 */
struct ChernOrder {
    bool operator()(const ChernMonomial& a, const ChernMonomial& b) const;
};

/// All monomials of the given weight with parts <= n, in canonical order.
std::vector<ChernMonomial> chern_basis(int n, int weight);

/**
 * Sparse polynomial with exact coefficients. The same container backs the
 * integral ring (Coeff = Int) and rational computations (Coeff = Rat).
 */
template <typename Coeff>
class ChernPoly {
public:
    using Terms = std::map<ChernMonomial, Coeff, ChernOrder>;

    ChernPoly() = default;

    static ChernPoly unit() { return monomial(ChernMonomial{}, Coeff(1)); }
    static ChernPoly monomial(const ChernMonomial& m, Coeff c)
    {
        ChernPoly p;
        p.add(m, std::move(c));
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    const Terms& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    Coeff coeff(const ChernMonomial& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? Coeff(0) : it->second;
    }

    void add(const ChernMonomial& m, Coeff c)
    {
        if (c == 0)
            return;
        auto [it, fresh] = terms_.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    ChernPoly& operator+=(const ChernPoly& rhs)
    {
        for (const auto& [m, c] : rhs.terms_)
            add(m, c);
        return *this;
    }
    ChernPoly& operator-=(const ChernPoly& rhs)
    {
        for (const auto& [m, c] : rhs.terms_)
            add(m, -c);
        return *this;
    }

    friend ChernPoly operator+(ChernPoly a, const ChernPoly& b) { return a += b; }
    friend ChernPoly operator-(ChernPoly a, const ChernPoly& b) { return a -= b; }

    friend ChernPoly operator*(const ChernPoly& a, const ChernPoly& b)
    {
        ChernPoly p;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_)
                p.add(ma * mb, ca * cb);
        return p;
    }

    friend ChernPoly operator*(const Coeff& s, const ChernPoly& p)
    {
        ChernPoly q;
        for (const auto& [m, c] : p.terms_)
            q.add(m, s * c);
        return q;
    }

    ChernPoly operator-() const { return Coeff(-1) * *this; }

    bool operator==(const ChernPoly&) const = default;

    /// Is every monomial of the same weight? (zero counts as homogeneous)
    bool homogeneous() const
    {
        int w = -1;
        for (const auto& [m, c] : terms_) {
            if (w < 0)
                w = m.weight();
            else if (m.weight() != w)
                return false;
        }
        return true;
    }

    int weight() const { return terms_.empty() ? 0 : terms_.begin()->first.weight(); }
    int max_part() const
    {
        int mp = 0;
        for (const auto& [m, c] : terms_)
            mp = std::max(mp, m.max_part());
        return mp;
    }

    /// Drop monomials containing c_i with i > n (c_i = 0 beyond the rank).
    ChernPoly truncated(int n) const
    {
        ChernPoly p;
        for (const auto& [m, c] : terms_)
            if (m.max_part() <= n)
                p.add(m, c);
        return p;
    }

    std::string str() const;

private:
    Terms terms_;
};

using ChernPolynomial = ChernPoly<Int>;
using ChernPolynomialQ = ChernPoly<Rat>;

/**
 * The unique derivation with divergence(c_k) = (n-k+1) c_{k-1}, c_0 = 1.
 * Lowers the weight of homogeneous input by exactly one.
 */
ChernPolynomial divergence(const ChernPolynomial& p, int n);
ChernPolynomialQ divergence(const ChernPolynomialQ& p, int n);

/// Monomials in v_1..v_n: exponent vector -> coefficient.
using VPolynomial = std::map<std::vector<int>, Int>;

/// Substitute every c_i by the i-th elementary symmetric polynomial in v_1..v_n.
VPolynomial expand_in_v(const ChernPolynomial& p, int n);

/// Content (gcd of coefficients, nonnegative).
Int content(const ChernPolynomial& p);

/// Gcd of coefficient denominators is 1, i.e. all coefficients integral.
bool is_integral(const ChernPolynomialQ& p);
ChernPolynomial to_integral(const ChernPolynomialQ& p);
ChernPolynomialQ to_rational(const ChernPolynomial& p);

/// Coordinates of p over the given ordered basis; throws if unsupported monomials appear.
std::vector<Int> coordinates(const ChernPolynomial& p, const std::vector<ChernMonomial>& basis);
ChernPolynomial from_coordinates(const std::vector<Int>& v, const std::vector<ChernMonomial>& basis);

/// CLI serialization: [{"exponents":[...], "coeff":"<decimal>"}] with rank-n exponent vectors.
std::string chern_poly_json(const ChernPolynomial& p, int n);

} // namespace bpu

#endif
