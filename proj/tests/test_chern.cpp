#include <catch_amalgamated.hpp>

#include <random>

#include "bpu/chern.hpp"
#include "oracles.hpp"

using namespace bpu;

namespace {

ChernPolynomial mono(std::initializer_list<int> parts, long c = 1)
{
    return ChernPolynomial::monomial(ChernMonomial(std::vector<int>(parts)), Int(c));
}

} // namespace

TEST_CASE("weight-6 basis reproduces the canonical listing")
{
    auto b = chern_basis(6, 6);
    std::vector<std::string> got;
    for (const auto& m : b)
        got.push_back(m.str());
    std::vector<std::string> want{"c6",     "c5*c1",      "c4*c2",    "c3^2",
                                  "c4*c1^2", "c3*c2*c1",  "c2^3",     "c3*c1^3",
                                  "c2^2*c1^2", "c2*c1^4", "c1^6"};
    CHECK(got == want);
}

TEST_CASE("basis cardinality equals the partition count")
{
    for (int n = 1; n <= 8; ++n)
        for (int w = 0; w <= 8; ++w)
            CHECK(chern_basis(n, w).size()
                  == static_cast<std::size_t>(testing::partition_count(w, std::min(w, n))));
    CHECK(chern_basis(3, 6).size() == 7);
    CHECK(chern_basis(6, 0).size() == 1); // the unit monomial
}

TEST_CASE("divergence on small inputs")
{
    int n = 7;
    CHECK(divergence(mono({1}), n) == ChernPolynomial::monomial(ChernMonomial{}, Int(n)));
    CHECK(divergence(ChernPolynomial::unit(), n).is_zero());
    // product rule by hand: c2*c1 -> n*c2 + (n-1)*c1^2
    ChernPolynomial expect = mono({2}, n) + mono({1, 1}, n - 1);
    CHECK(divergence(mono({2, 1}), n) == expect);
}

TEST_CASE("divergence lowers homogeneous weight by one")
{
    for (int n = 2; n <= 6; ++n)
        for (int w = 1; w <= 6; ++w)
            for (const auto& m : chern_basis(n, w)) {
                ChernPolynomial d = divergence(ChernPolynomial::monomial(m, Int(1)), n);
                CHECK(d.homogeneous());
                if (!d.is_zero())
                    CHECK(d.weight() == w - 1);
            }
}

TEST_CASE("multiplication")
{
    // (3 c2 - c1^2)^2 = 9 c2^2 - 6 c2 c1^2 + c1^4
    ChernPolynomial e2 = mono({2}, 3) - mono({1, 1});
    ChernPolynomial sq = e2 * e2;
    ChernPolynomial expect = mono({2, 2}, 9) - mono({2, 1, 1}, 6) + mono({1, 1, 1, 1});
    CHECK(sq == expect);
    CHECK((e2 * ChernPolynomial::unit()) == e2);
    CHECK((e2 * ChernPolynomial()).is_zero());
}

TEST_CASE("expand_in_v gives elementary symmetric polynomials")
{
    auto key = [](std::initializer_list<int> e) { return std::vector<int>(e); };
    VPolynomial s1 = expand_in_v(mono({1}), 2);
    CHECK(s1 == VPolynomial{{key({1, 0}), 1}, {key({0, 1}), 1}});
    VPolynomial s2 = expand_in_v(mono({2}), 2);
    CHECK(s2 == VPolynomial{{key({1, 1}), 1}});
    VPolynomial s23 = expand_in_v(mono({2}), 3);
    CHECK(s23 == VPolynomial{{key({1, 1, 0}), 1}, {key({1, 0, 1}), 1}, {key({0, 1, 1}), 1}});
}

TEST_CASE("divergence agrees with the torus-derivative oracle")
{
    // full agreement range is exercised in the acceptance suite; spot-check a
    // denser small region here
    for (int n = 2; n <= 5; ++n)
        for (int w = 1; w <= 5; ++w)
            for (const auto& m : chern_basis(n, w)) {
                ChernPolynomial p = ChernPolynomial::monomial(m, Int(1));
                CHECK(divergence(p, n) == testing::divergence_via_torus(p, n));
            }
}

TEST_CASE("divergence satisfies the derivation law")
{
    std::mt19937 rng(31337);
    std::uniform_int_distribution<int> coeff(-4, 4);
    for (int n = 2; n <= 8; n += 3)
        for (int wp = 1; wp <= 3; ++wp)
            for (int wq = 1; wq <= 3; ++wq) {
                ChernPolynomial p, q;
                for (const auto& m : chern_basis(n, wp))
                    p.add(m, coeff(rng));
                for (const auto& m : chern_basis(n, wq))
                    q.add(m, coeff(rng));
                ChernPolynomial lhs = divergence(p * q, n);
                ChernPolynomial rhs = divergence(p, n) * q + p * divergence(q, n);
                REQUIRE(lhs == rhs);
            }
}

TEST_CASE("content and truncation")
{
    ChernPolynomial p = mono({2}, 6) + mono({1, 1}, 9);
    CHECK(content(p) == 3);
    ChernPolynomial with_c4 = mono({4}, 2) + mono({2}, 5);
    CHECK(with_c4.truncated(3) == mono({2}, 5));
}

TEST_CASE("json serialization of polynomials")
{
    ChernPolynomial e2 = mono({2}, 6) - mono({1, 1}, 2);
    CHECK(chern_poly_json(e2, 3)
          == "[{\"exponents\":[0,1,0],\"coeff\":\"6\"},{\"exponents\":[2,0,0],\"coeff\":\"-2\"}]");
}
