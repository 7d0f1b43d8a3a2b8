#ifndef BPU_INVARIANTS_HPP
#define BPU_INVARIANTS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bpu/abelian.hpp"
#include "bpu/chern.hpp"

namespace bpu {

/**
 * The scalar ring used for the degree-12 span and witness checks: rationals
 * whose denominators are coprime to every prime in P, where P is the set of
 * primes dividing n, with 2 removed when n = 2 mod 4.
 */
struct CoefficientRing {
    int n = 0;
    std::vector<Int> primes; // P, ascending

    static CoefficientRing for_rank(int n);

    /// q has an admissible denominator (q lies in the ring).
    bool admits(const Rat& q) const;
    /// q is invertible in the ring (numerator and denominator both coprime to P).
    bool is_unit(const Rat& q) const;
    bool admits_all(const ChernPolynomialQ& p) const;
};

/// Number-theoretic constants attached to the rank.
struct Constants {
    Int lambda; // n, or n/2 when n = 2 mod 4
    int delta;  // 2 iff n = 2 mod 4
    int mu;     // 4 if n = 4 mod 8, 2 if n = 0 mod 8, else 1
};

Constants constants(int n);

/**
 * Weight-w slice of the invariant ring: the saturated kernel lattice of the
 * page-3 differential on the left column, rows in Hermite normal form over
 * the canonical weight-w monomial basis.
 */
struct InvariantBasis {
    int n = 0;
    int w = 0;
    std::vector<ChernMonomial> monomials;
    IntMatrix rows;

    std::size_t rank() const { return rows.rows(); }
    std::vector<ChernPolynomial> polynomials() const;
};

InvariantBasis kn_basis(int n, int w);

/**
 * The inductively constructed generators e_2..e_up_to: at each weight the
 * quotient of the invariant slice by products of the earlier generators has
 * free rank one, and e_i is the canonical lift of a generator of that free
 * summand (reduced modulo the saturated product lattice, positive
 * coefficient on the pure monomial c_i). e_i = 0 for i > n.
 */
struct GeneratorSequence {
    int n = 0;
    std::map<int, ChernPolynomial> e; // index 2..6; absent/zero above n
    Constants consts;
    std::map<int, std::string> provenance; // "constructed" or "published-formula"

    const ChernPolynomial& at(int i) const;
    /// Product e_{parts[0]} * e_{parts[1]} * ...; zero if any factor vanishes.
    ChernPolynomial product(const std::vector<int>& parts) const;
};

GeneratorSequence construct_e(int n, int up_to = 6);

/// The same sequence with the published e2..e4 formulas substituted.
GeneratorSequence with_published_formulas(GeneratorSequence gens);

/// The degree-12 quotient by (e2^3, e3^2, e4 e2, e6); vanishing generators dropped.
FgAbGroup quotient_K12(int n);
FgAbGroup quotient_K12(int n, const GeneratorSequence& gens);

/**
 * Witness of the degree-12 relation: modulus * alpha6 = b*e4e2 + c*e3^2 +
 * d*e2^3 + f*e6 exactly, with modulus = lambda^3 and alpha6 a canonical
 * lift of a generator of the cyclic quotient. f is cleared by adjusting the
 * lift whenever possible; f_cleared records whether that succeeded.
 */
struct RelationWitness {
    Int modulus;
    Int b, c, d, f;
    ChernPolynomial alpha6;
    bool f_cleared = true;

    std::string to_json(int n) const;
};

RelationWitness solve_relation(int n);
RelationWitness solve_relation(int n, const GeneratorSequence& gens,
                               const ChernPolynomial& alpha6);

/// Explicit generator formulas, instantiated at rank n (zero when degenerate).
ChernPolynomial published_e2(int n);
ChernPolynomial published_e3(int n);
ChernPolynomial published_e4(int n);
ChernPolynomialQ published_beta6(int n);  // requires n >= 3
ChernPolynomialQ published_alpha6(int n); // requires n >= 4 (poles at n = 2)
/// The explicit integral alpha6 used by the rank-5 worked example.
ChernPolynomial example_alpha6_rank5();

/// Result of the formula verification battery for one rank.
struct FormulaReport {
    enum class Status { pass, fail, skipped };
    struct Check {
        std::string name;
        Status status;
        std::string note;
    };
    int n = 0;
    std::vector<Check> checks;

    bool all_passed() const; // skipped entries do not count as failures
    std::string to_json() const;
};

/**
 * Checks the divergence-annihilation, leading coefficients, coefficient-ring
 * span claims and scalar witnesses for the explicit degree <= 12 formulas.
 * Checks whose denominator preconditions fail at this n are reported as
 * skipped with a notice.
 */
FormulaReport verify_formulas(int n);

} // namespace bpu

#endif
