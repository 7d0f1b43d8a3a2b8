#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "bpu/page.hpp"
#include "bpu/rules.hpp"

using namespace bpu;

TEST_CASE("condition DSL")
{
    CHECK(condition_holds("all", 7));
    CHECK(condition_holds("even", 8));
    CHECK_FALSE(condition_holds("even", 9));
    CHECK(condition_holds("odd", 9));
    CHECK(condition_holds("n % 4 == 0", 12));
    CHECK_FALSE(condition_holds("n % 4 == 0", 10));
    CHECK(condition_holds("even && n >= 4", 6));
    CHECK_FALSE(condition_holds("even && n >= 4", 2));
    CHECK_THROWS_AS(condition_holds("m % 2 == 0", 2), std::invalid_argument);
}

TEST_CASE("coefficient formula evaluation")
{
    CHECK(eval_coeff_formula("0", 5) == 0);
    CHECK(eval_coeff_formula("1", 5) == 1);
    CHECK(eval_coeff_formula("n", 5) == 5);
    CHECK(eval_coeff_formula("binom(n-1,3)", 8) == 35);
    CHECK(eval_coeff_formula("binom(n,2)", 6) == 15);
    CHECK(eval_coeff_formula("binom(n-1,3)", 2) == 0); // below the window
    CHECK(eval_coeff_formula("2*n - 3", 4) == 5);
    CHECK_THROWS_AS(eval_coeff_formula("binom(n", 4), std::invalid_argument);
}

TEST_CASE("builtin table validates and round-trips byte-exactly")
{
    RuleTable t = RuleTable::builtin();
    CHECK_NOTHROW(t.validate());
    std::string dumped = t.to_json();
    RuleTable reparsed = RuleTable::from_json(dumped);
    CHECK(reparsed.to_json() == dumped);
    CHECK(t.has_column_degeneration());

    // the shipped data file carries the identical table
    std::ifstream in(std::string(BPU_SOURCE_DIR) + "/data/rules.json");
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == dumped);
}

TEST_CASE("differential records respect the page bidegree pattern")
{
    RuleTable table = RuleTable::builtin();
    for (const auto& r : table.rules()) {
        if (!r.is_differential())
            continue;
        auto [ts, tt] = r.target_bidegree();
        CHECK(ts == r.s + r.page);
        CHECK(tt == r.t - r.page + 1);
        CHECK(tt >= 0);
    }
}

TEST_CASE("a rule naming an unknown class fails loudly")
{
    std::vector<DifferentialRule> rules = RuleTable::builtin().rules();
    DifferentialRule bogus;
    bogus.page = 7;
    bogus.s = 3;
    bogus.t = 10;
    bogus.n_condition = "n % 4 == 0";
    bogus.source_label = "c5*c1*x1"; // not a weight-5 monomial: absent from (3,10)
    bogus.coeff_formula = "1";
    bogus.target_label = "c1^2*y21";
    bogus.citation = "synthetic";
    rules.push_back(bogus);
    RuleTable t(std::move(rules));
    CHECK_THROWS_AS(einf_entry(8, 3, 10, t), std::invalid_argument);
}

TEST_CASE("a rule contradicting the computed page fails loudly")
{
    std::vector<DifferentialRule> rules = RuleTable::builtin().rules();
    DifferentialRule bogus;
    bogus.page = 7;
    bogus.s = 3;
    bogus.t = 10;
    bogus.n_condition = "even";
    bogus.source_label = "c4*c1*x1"; // survives to page 3 only: not a d3-cycle
    bogus.coeff_formula = "1";
    bogus.target_label = "c1^2*y21";
    bogus.citation = "synthetic";
    rules.push_back(bogus);
    RuleTable t(std::move(rules));
    // c4*c1*x1 maps to n*c4*x1^2 + (n-3)*c3*c1*x1^2 with odd second entry
    CHECK_THROWS_AS(einf_entry(6, 3, 10, t), std::runtime_error);
}
