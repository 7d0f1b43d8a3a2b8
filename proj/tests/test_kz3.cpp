#include <catch_amalgamated.hpp>

#include "bpu/kz3.hpp"

using namespace bpu;
using kz3::Monomial;

namespace {

Monomial mono(int x1, int y30 = 0, int y21 = 0, int y50 = 0, int y201 = 0)
{
    return Monomial{{x1, y30, y21, y50, y201}};
}

} // namespace

TEST_CASE("annihilators of the presented generators")
{
    CHECK(kz3::annihilator(mono(1)) == 0);  // x1 free
    CHECK(kz3::annihilator(mono(0)) == 0);  // unit
    CHECK(kz3::annihilator(mono(2)) == 2);  // 2 x1^2 = 0
    CHECK(kz3::annihilator(mono(0, 1)) == 3);
    CHECK(kz3::annihilator(mono(0, 0, 1)) == 2);
    CHECK(kz3::annihilator(mono(0, 0, 0, 1)) == 5);
    CHECK(kz3::annihilator(mono(0, 0, 0, 0, 1)) == 2);
    // gcd(2,3) = 1: the monomial vanishes
    CHECK(kz3::annihilator(mono(2, 1)) == 1);
    CHECK_THROWS_AS(kz3::annihilator(mono(4, 0, 0, 1)), std::out_of_range); // degree 24
}

TEST_CASE("degree components")
{
    CHECK(kz3::degree_group(3).free_rank() == 1);
    CHECK(kz3::degree_group(3).labels() == std::vector<std::string>{"x1"});

    FgAbGroup d12 = kz3::degree_group(12);
    CHECK(d12.free_rank() == 0);
    CHECK(d12.invariant_factors() == std::vector<Int>{10}); // Z/2 + Z/5
    CHECK(d12.labels() == std::vector<std::string>{"x1^4", "y50"});

    CHECK(kz3::degree_group(14).is_trivial());

    FgAbGroup d15 = kz3::degree_group(15);
    CHECK(p_primary(d15, 2) == std::vector<Int>{2, 2});
    CHECK(d15.labels() == std::vector<std::string>{"x1^5", "x1*y50", "y2_01"});

    CHECK_THROWS_AS(kz3::degree_group(16), std::out_of_range);
}

TEST_CASE("all components below the free edge are torsion")
{
    for (int s = 0; s <= 12; ++s) {
        FgAbGroup g = kz3::degree_group(s);
        if (s == 0 || s == 3)
            CHECK(g.free_rank() == 1);
        else
            CHECK(g.free_rank() == 0);
    }
}

TEST_CASE("multiplication by x1")
{
    using kz3::Element;
    Element one = Element::monomial_element(kz3::unit());
    CHECK(kz3::mul_x1(one) == Element::monomial_element(mono(1)));

    Element x1 = Element::monomial_element(mono(1));
    Element x1sq = kz3::mul_x1(x1);
    CHECK(x1sq == Element::monomial_element(mono(2)));
    // order two: doubling the coefficient kills it
    CHECK(x1sq.scaled(2).is_zero());

    // x1 * (x1 * y30) = x1^2 y30 = 0
    Element xy = Element::monomial_element(mono(1, 1));
    CHECK(kz3::mul_x1(xy).is_zero());
}

TEST_CASE("mul_x1 is additive and respects scaling")
{
    using kz3::Element;
    Element a = Element::monomial_element(mono(1), 1);
    Element b = Element::monomial_element(mono(0, 0, 1), 1); // y21, degree 10
    Element sum = a + b;
    CHECK(kz3::mul_x1(sum) == kz3::mul_x1(a) + kz3::mul_x1(b));
    CHECK(kz3::mul_x1(a.scaled(3)) == kz3::mul_x1(a).scaled(3));
}

TEST_CASE("element coefficients stay reduced")
{
    using kz3::Element;
    Element e = Element::monomial_element(mono(0, 1), 5); // 5*y30 = 2*y30
    REQUIRE(e.terms().size() == 1);
    CHECK(e.terms().begin()->second == 2);
    Element z = Element::monomial_element(mono(0, 1), 3);
    CHECK(z.is_zero());
}

TEST_CASE("mul_x1 rejects products beyond the presented range")
{
    using kz3::Element;
    // x1 * x1*y21 has degree 16
    CHECK_THROWS_AS(kz3::mul_x1(Element::monomial_element(mono(1, 0, 1))), std::out_of_range);
}
