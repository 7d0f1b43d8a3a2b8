#include <catch_amalgamated.hpp>

#include "bpu/page.hpp"
#include "oracles.hpp"

using namespace bpu;

namespace {

/// The displayed weight-6 differential matrix, as a formula in n.
IntMatrix weight6_matrix(long n)
{
    return IntMatrix::from_rows(std::vector<std::vector<long>>{
        {n - 5, 0, 0, 0, 0, 0, 0},
        {n, n - 4, 0, 0, 0, 0, 0},
        {0, n - 1, n - 3, 0, 0, 0, 0},
        {0, 0, 2 * (n - 2), 0, 0, 0, 0},
        {0, 2 * n, 0, n - 3, 0, 0, 0},
        {0, 0, n, n - 1, n - 2, 0, 0},
        {0, 0, 0, 0, 3 * (n - 1), 0, 0},
        {0, 0, 0, 3 * n, 0, n - 2, 0},
        {0, 0, 0, 0, 2 * n, 2 * (n - 1), 0},
        {0, 0, 0, 0, 0, 4 * n, n - 1},
        {0, 0, 0, 0, 0, 0, 6 * n},
    });
}

std::vector<std::string> label_strings(const PageEntry& e)
{
    std::vector<std::string> out;
    for (const auto& l : e.basis_labels)
        out.push_back(l.str());
    return out;
}

} // namespace

TEST_CASE("page-3 entries carry the expected bases")
{
    SECTION("free left-column entry of weight 6")
    {
        PageEntry e = e3_entry(6, 0, 12);
        CHECK(e.group.free_rank() == 11);
        CHECK(e.group.invariant_factors().empty());
        CHECK(label_strings(e).front() == "c6");
        CHECK(label_strings(e).back() == "c1^6");
    }
    SECTION("x1 row of weight 5")
    {
        PageEntry e = e3_entry(6, 3, 10);
        CHECK(e.group.free_rank() == 7);
        std::vector<std::string> want{"c5*x1",      "c4*c1*x1",   "c3*c2*x1", "c3*c1^2*x1",
                                      "c2^2*c1*x1", "c2*c1^3*x1", "c1^5*x1"};
        CHECK(label_strings(e) == want);
    }
    SECTION("x1^2 row of weight 4 is elementary 2-torsion")
    {
        PageEntry e = e3_entry(6, 6, 8);
        CHECK(e.group.free_rank() == 0);
        CHECK(e.group.invariant_factors() == std::vector<Int>(5, Int(2)));
        CHECK(label_strings(e).front() == "c4*x1^2");
    }
    SECTION("odd-torsion rows vanish after 2-localization")
    {
        CHECK(e3_entry(6, 8, 4, Localization::integral).group.invariant_factors()
              == std::vector<Int>{3, 3});
        CHECK(e3_entry(6, 8, 4, Localization::two_local).group.is_trivial());
    }
}

TEST_CASE("the weight-6 differential matrix matches the displayed formula")
{
    for (int n : {6, 8, 10, 12})
        CHECK(d3_matrix(n, 0, 12) == weight6_matrix(n));
}

TEST_CASE("differential values on generators")
{
    // d3(c_k) = (n-k+1) c_{k-1} x1; at rank 2 and weight 2 the matrix is [(1),(4)]
    IntMatrix m = d3_matrix(2, 0, 4);
    CHECK(m == IntMatrix::from_rows(std::vector<std::vector<long>>{{1}, {4}}));
    // constants map to zero
    CHECK(d3_matrix(4, 8, 0).is_zero());
}

TEST_CASE("d3 composes to zero")
{
    for (int n : {2, 5, 6, 9, 12}) {
        for (int s : {0, 3, 6, 8, 9, 10, 11, 12}) {
            for (int t = 0; s + t <= 15; t += 2) {
                if (s + 6 > 15 && t - 3 >= 0)
                    continue; // second map leaves the presented window
                GroupMap first = d3(n, s, t);
                GroupMap second = d3(n, s + 3, t - 2);
                IntMatrix comp = first.matrix() * second.matrix();
                PageEntry tgt = e3_entry(n, s + 6, t - 4);
                for (std::size_t i = 0; i < comp.rows(); ++i)
                    for (std::size_t j = 0; j < comp.cols(); ++j) {
                        Int ann = kz3::annihilator(tgt.basis_labels[j].base);
                        if (ann == 0)
                            REQUIRE(comp.at(i, j) == 0);
                        else
                            REQUIRE(comp.at(i, j) % ann == 0);
                    }
            }
        }
    }
}

TEST_CASE("page-4 entries match the displayed values")
{
    for (int n : {6, 8, 10, 12}) {
        CHECK(e4_entry(n, 6, 6).group.is_trivial());
        CHECK(e4_entry(n, 9, 4).group.is_trivial());
        CHECK(e4_entry(n, 12, 2).group.is_trivial());

        PageEntry e68 = e4_entry(n, 6, 8);
        CHECK(e68.group.invariant_factors() == std::vector<Int>{2});
        CHECK(e68.group.labels() == std::vector<std::string>{"c2^2*x1^2"});

        PageEntry e310 = e4_entry(n, 3, 10);
        if (n % 4 == 0) {
            CHECK(e310.group.invariant_factors() == std::vector<Int>{2});
            CHECK(e310.group.labels() == std::vector<std::string>{"2*c4*c1*x1"});
        } else {
            CHECK(e310.group.is_trivial());
        }

        PageEntry e104 = e4_entry(n, 10, 4);
        CHECK(e104.group.invariant_factors() == std::vector<Int>{2});
        CHECK(e104.group.labels() == std::vector<std::string>{"c1^2*y21"});
    }
}

TEST_CASE("left-column page-4 entries are the kernel lattices")
{
    for (int n : {3, 6, 8}) {
        PageEntry e = e4_entry(n, 0, 12);
        IntMatrix k = kernel_lattice(d3(n, 0, 12));
        CHECK(e.group.free_rank() == k.rows());
        CHECK(e.group.invariant_factors().empty());
    }
    CHECK(e4_entry(6, 0, 12).group.free_rank() == 4);
}

TEST_CASE("stable entries under the shipped rule table")
{
    for (int n : {4, 6, 8, 10, 12}) {
        PageEntry e310 = einf_entry(n, 3, 10);
        CHECK(e310.group.is_trivial()); // killed either at page 4 or page 7

        PageEntry e104 = einf_entry(n, 10, 4);
        if (n % 4 == 2) {
            CHECK(e104.group.invariant_factors() == std::vector<Int>{2});
            CHECK(e104.group.labels() == std::vector<std::string>{"c1^2*y21"});
        } else {
            CHECK(e104.group.is_trivial());
        }

        PageEntry e68 = einf_entry(n, 6, 8);
        if (n % 4 == 0)
            CHECK(e68.group.invariant_factors() == std::vector<Int>{2});
        else
            CHECK(e68.group.is_trivial());

        CHECK(einf_entry(n, 10, 2).group.is_trivial());
        CHECK(einf_entry(n, 12, 0).group.labels() == std::vector<std::string>{"x1^4"});
        CHECK(einf_entry(n, 13, 0).group.labels() == std::vector<std::string>{"x1*y21"});

        PageEntry e150 = einf_entry(n, 15, 0);
        if (n % 4 == 0)
            CHECK(e150.group.invariant_factors() == std::vector<Int>{2, 2});
        else
            CHECK(e150.group.invariant_factors() == std::vector<Int>{2}); // one class dies at page 9
    }
}

TEST_CASE("the degree-14 corner of the base vanishes")
{
    for (int n : {2, 6, 9, 12})
        CHECK(e3_entry(n, 14, 0).group.is_trivial());
}

TEST_CASE("torsion assembly")
{
    SECTION("examples")
    {
        AssemblyReport r6 = torsion_of_H(6, 12);
        CHECK(r6.torsion.invariant_factors() == std::vector<Int>{2});
        CHECK(r6.verdict == SplitVerdict::split_by_free_top);

        AssemblyReport r10 = torsion_of_H(10, 12);
        CHECK(r10.torsion.invariant_factors() == std::vector<Int>{10}); // Z/2 + Z/5
        CHECK(p_primary(r10.torsion, 2) == std::vector<Int>{2});
        CHECK(p_primary(r10.torsion, 5) == std::vector<Int>{5});

        AssemblyReport r5 = torsion_of_H(5, 13);
        CHECK(r5.torsion.is_trivial());
    }
    SECTION("degree 13 is a single-entry column")
    {
        AssemblyReport r = torsion_of_H(8, 13);
        CHECK(r.verdict == SplitVerdict::unambiguous_single_entry);
        CHECK(r.free_top_rank == 0);
        CHECK(r.torsion.invariant_factors() == std::vector<Int>{2});
    }
    SECTION("report serialization shape")
    {
        std::string j = torsion_of_H(6, 12).to_json();
        CHECK(j.find("\"verdict\":\"split-by-free-top\"") != std::string::npos);
        CHECK(j.find("\"torsion\":{\"invariant_factors\":[2]}") != std::string::npos);
    }
}

TEST_CASE("entry serialization")
{
    std::string j = e4_entry(8, 3, 10).to_json();
    CHECK(j.find("\"labels\":[\"2*c4*c1*x1\"]") != std::string::npos);
}

TEST_CASE("left-column page-3 entries are free of partition rank")
{
    for (int n : {2, 5, 8})
        for (int t = 0; t <= 14; t += 2) {
            PageEntry e = e3_entry(n, 0, t);
            CHECK(e.group.invariant_factors().empty());
            CHECK(e.group.free_rank()
                  == static_cast<std::size_t>(
                      bpu::testing::partition_count(t / 2, std::min(t / 2, n))));
        }
}

TEST_CASE("range preconditions are enforced")
{
    CHECK_THROWS_AS(e3_entry(6, 16, 0), std::out_of_range);
    CHECK_THROWS_AS(einf_entry(6, 15, 2), std::out_of_range);
    CHECK_THROWS_AS(torsion_of_H(6, 11), std::invalid_argument);
    CHECK_THROWS_AS(e3_entry(1, 0, 4), std::invalid_argument);
}

TEST_CASE("the engine refuses to guess when records are removed")
{
    RuleTable full = RuleTable::builtin();
    auto without = [&](auto pred) {
        std::vector<DifferentialRule> keep;
        for (const auto& r : full.rules())
            if (!pred(r))
                keep.push_back(r);
        return RuleTable(keep);
    };

    // no permanence at (12,0): the incoming page-9 differential is open
    RuleTable no_x14 = without([](const DifferentialRule& r) {
        return r.is_permanence() && r.s == 12 && r.t == 0;
    });
    CHECK_THROWS_AS(einf_entry(8, 12, 0, no_x14), std::runtime_error);

    // no permanence at (10,4): its outgoing page-5 differential is open
    RuleTable no_y21 = without([](const DifferentialRule& r) {
        return r.is_permanence() && r.s == 10 && r.t == 4;
    });
    CHECK_THROWS_AS(einf_entry(6, 10, 4, no_y21), std::runtime_error);

    // no column degeneration: the left column's outgoing differentials are open
    RuleTable no_column = without([](const DifferentialRule& r) {
        return r.is_column_degeneration();
    });
    CHECK_THROWS_AS(einf_entry(6, 0, 12, no_column), std::runtime_error);
    // (13,0) stays determined through its own permanence record, so dropping
    // that record as well is what opens its incoming page-13 differential
    RuleTable no_column_no_perm = without([](const DifferentialRule& r) {
        return r.is_column_degeneration() || (r.is_permanence() && r.s == 13);
    });
    CHECK_THROWS_AS(einf_entry(6, 13, 0, no_column_no_perm), std::runtime_error);

    // no page-9 record at (6,8): its fate at page 9 is open
    RuleTable no_d9 = without([](const DifferentialRule& r) { return r.page == 9; });
    CHECK_THROWS_AS(einf_entry(6, 6, 8, no_d9), std::runtime_error);

    // the full table determines all four entries
    CHECK_NOTHROW(einf_entry(8, 12, 0, full));
    CHECK_NOTHROW(einf_entry(6, 10, 4, full));
    CHECK_NOTHROW(einf_entry(6, 13, 0, full));
    CHECK_NOTHROW(einf_entry(6, 6, 8, full));
}

TEST_CASE("the left column stabilizes at page 4")
{
    for (int n : {3, 6, 11}) {
        PageEntry e4 = e4_entry(n, 0, 12);
        PageEntry einf = einf_entry(n, 0, 12);
        CHECK(einf.group.free_rank() == e4.group.free_rank());
        CHECK(einf.group.labels() == e4.group.labels());
    }
}
