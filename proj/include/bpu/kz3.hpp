#ifndef BPU_KZ3_HPP
#define BPU_KZ3_HPP

#include <array>
#include <map>
#include <string>
#include <vector>

#include "bpu/abelian.hpp"
#include "bpu/integers.hpp"

namespace bpu {

/**
 * The presented graded ring carried by the base of the fibration, valid in
 * degrees <= 15: generators x1, y30, y21, y50, y2_01 of degrees 3, 8, 10,
 * 12, 15 with relations 2*x1^2, 3*y30, 2*y21, 5*y50, 2*y2_01.
 */
namespace kz3 {

inline constexpr int generator_count = 5;
inline constexpr int max_degree = 15;
inline constexpr std::array<int, generator_count> degrees{3, 8, 10, 12, 15};
inline constexpr std::array<const char*, generator_count> names{"x1", "y30", "y21", "y50", "y2_01"};

struct Monomial {
    std::array<int, generator_count> e{0, 0, 0, 0, 0};

    int degree() const;
    bool is_unit() const;
    std::string str() const;

    bool operator==(const Monomial&) const = default;
    /// Label order: descending exponent-vector lexicographic (x1-heavy first).
    bool operator<(const Monomial& rhs) const { return rhs.e < e; }
};

inline Monomial unit() { return {}; }
Monomial generator(int idx);

/**
 * Additive order of the monomial in the presented ring: 0 when free (only 1
 * and x1), otherwise the gcd of the multipliers of all relations whose
 * generator power divides the monomial; 1 means the monomial is zero.
 * Degrees above 15 are outside the presentation and rejected.
 */
Int annihilator(const Monomial& m);

/// All degree-s monomials with nonzero image (annihilator != 1), label order.
std::vector<Monomial> monomials(int degree);

/// Degree-s component as a normalized presented group with monomial labels.
FgAbGroup degree_group(int degree);

/**
 * Element: integer combination of monomials with coefficients reduced into
 * [0, annihilator) for torsion monomials; zero monomials are dropped.
 */
class Element {
public:
    Element() = default;
    static Element monomial_element(const Monomial& m, Int c = Int(1));

    void add(const Monomial& m, Int c);
    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, Int>& terms() const { return terms_; }

    Element operator+(const Element& rhs) const;
    Element scaled(const Int& s) const;
    bool operator==(const Element&) const = default;

    std::string str() const;

private:
    std::map<Monomial, Int> terms_;
};

/// Multiply by x1 and reduce by annihilators; result degree must stay <= 15.
Element mul_x1(const Element& e);
/// Monomial times x1; second member false when the product is zero.
std::pair<Monomial, bool> mul_x1(const Monomial& m);

} // namespace kz3

} // namespace bpu

#endif
