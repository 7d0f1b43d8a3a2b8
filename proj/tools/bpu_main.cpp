// Command-line surface: per-n queries, sweep verification of the torsion and
// quotient theorems, page inspection, and table emission.

#include <cstdio>
#include <exception>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bpu/invariants.hpp"
#include "bpu/page.hpp"
#include "bpu/rules.hpp"

namespace {

using namespace bpu;

constexpr int exit_ok = 0;
constexpr int exit_verification_failure = 1;
constexpr int exit_usage = 2;

struct Range {
    int lo = 0, hi = 0;
};

Range parse_range(const std::string& text)
{
    Range r;
    auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            r.lo = r.hi = std::stoi(text);
        } else {
            r.lo = std::stoi(text.substr(0, dots));
            r.hi = std::stoi(text.substr(dots + 2));
        }
    } catch (const std::exception&) {
        throw CLI::ValidationError("range", "expected N or A..B, got '" + text + "'");
    }
    if (r.lo > r.hi)
        throw CLI::ValidationError("range", "empty range '" + text + "'");
    return r;
}

RuleTable load_rules(const std::string& path)
{
    return path.empty() ? RuleTable::builtin() : RuleTable::load_file(path);
}

/// Markdown table torsion column mirroring the two-summand statement shape.
std::string torsion_summands(const AssemblyReport& rep)
{
    std::vector<std::string> parts;
    for (const auto& e : rep.entries)
        for (const Int& d : e.group.invariant_factors())
            parts.push_back(d.str());
    if (rep.degree == 12) {
        Int five = gcd(Int(5), Int(rep.n));
        if (five > 1)
            parts.push_back(five.str());
    }
    if (rep.n % 2 != 0 && rep.degree != 12) {
        // odd-rank fast path has no entries; torsion already normalized
        for (const Int& d : rep.torsion.invariant_factors())
            parts.push_back(d.str());
    }
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < parts.size(); ++i)
        os << (i ? "," : "") << parts[i];
    os << "]";
    return os.str();
}

int cmd_torsion(const Range& nr, const Range& dr, const std::string& format,
                const RuleTable& rules)
{
    if (dr.lo < 12 || dr.hi > 14)
        throw CLI::ValidationError("--deg", "supported degrees are 12..14");
    std::vector<AssemblyReport> reports;
    for (int n = nr.lo; n <= nr.hi; ++n)
        for (int d = dr.lo; d <= dr.hi; ++d)
            reports.push_back(torsion_of_H(n, d, rules));

    if (format == "json") {
        std::cout << "[";
        for (std::size_t i = 0; i < reports.size(); ++i)
            std::cout << (i ? "," : "") << "\n  " << reports[i].to_json();
        std::cout << "\n]\n";
    } else {
        std::cout << "| n    | degree | torsion      | verdict                  |\n"
                  << "|------|--------|--------------|--------------------------|\n";
        for (const auto& rep : reports) {
            std::ostringstream row;
            row << "| " << std::left << std::setw(4) << rep.n << " | " << std::setw(6)
                << rep.degree << " | " << std::setw(12) << torsion_summands(rep) << " | "
                << std::setw(24) << to_string(rep.verdict) << " |";
            std::cout << row.str() << "\n";
        }
    }
    return exit_ok;
}

int cmd_page(int n, const std::string& entry, const std::string& page, const std::string& format,
             const RuleTable& rules)
{
    auto comma = entry.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("--entry", "expected S,T");
    int s = std::stoi(entry.substr(0, comma));
    int t = std::stoi(entry.substr(comma + 1));

    PageEntry e;
    if (page == "3")
        e = e3_entry(n, s, t, s == 0 ? Localization::integral : Localization::two_local);
    else if (page == "4")
        e = e4_entry(n, s, t);
    else if (page == "inf")
        e = einf_entry(n, s, t, rules);
    else
        throw CLI::ValidationError("--page", "expected 3, 4 or inf");

    if (format == "json") {
        std::cout << e.to_json() << "\n";
        if (page == "3") {
            std::cout << "{\"d3_matrix\":" << d3_matrix(n, s, t).to_json_string() << "}\n";
        }
        return exit_ok;
    }
    std::cout << "entry (" << s << "," << t << ") page " << page << ", n = " << n << "\n";
    std::cout << "group: " << e.group.describe() << "\n";
    if (page == "3") {
        std::cout << "basis:";
        for (const auto& lab : e.basis_labels)
            std::cout << " " << lab.str();
        std::cout << "\n";
        IntMatrix m = d3_matrix(n, s, t);
        std::cout << "d3 matrix (" << m.rows() << "x" << m.cols() << ", rows = source basis):\n";
        for (std::size_t i = 0; i < m.rows(); ++i) {
            std::cout << "  [";
            for (std::size_t j = 0; j < m.cols(); ++j)
                std::cout << (j ? ", " : "") << m.at(i, j).str();
            std::cout << "]\n";
        }
    } else {
        std::cout << "generators:";
        if (e.group.labels().empty())
            std::cout << " (none)";
        for (const auto& l : e.group.labels())
            std::cout << " " << l;
        std::cout << "\n";
    }
    return exit_ok;
}

int cmd_invariants(int n, int max_weight, const std::string& format)
{
    GeneratorSequence gens = construct_e(n, std::min(max_weight, 6));
    if (format == "json") {
        std::cout << "{\"n\":" << n << ",\"lambda\":" << gens.consts.lambda.str()
                  << ",\"delta\":" << gens.consts.delta << ",\"mu\":" << gens.consts.mu
                  << ",\"weights\":[";
        bool first = true;
        for (int w = 1; w <= max_weight; ++w) {
            InvariantBasis kb = kn_basis(n, w);
            std::cout << (first ? "" : ",") << "{\"w\":" << w << ",\"rank\":" << kb.rank()
                      << ",\"basis\":[";
            auto polys = kb.polynomials();
            for (std::size_t i = 0; i < polys.size(); ++i)
                std::cout << (i ? "," : "") << chern_poly_json(polys[i], n);
            std::cout << "]}";
            first = false;
        }
        std::cout << "],\"generators\":[";
        first = true;
        for (const auto& [i, p] : gens.e) {
            std::cout << (first ? "" : ",") << "{\"index\":" << i << ",\"provenance\":\""
                      << gens.provenance.at(i) << "\",\"poly\":" << chern_poly_json(p, n) << "}";
            first = false;
        }
        std::cout << "]}\n";
        return exit_ok;
    }
    std::cout << "invariant ring slices for n = " << n << " (lambda = " << gens.consts.lambda.str()
              << ", delta = " << gens.consts.delta << ", mu = " << gens.consts.mu << ")\n";
    for (int w = 1; w <= max_weight; ++w) {
        InvariantBasis kb = kn_basis(n, w);
        std::cout << "weight " << w << " (degree " << 2 * w << "), rank " << kb.rank() << ":\n";
        for (const auto& p : kb.polynomials())
            std::cout << "  " << p.str() << "\n";
    }
    std::cout << "constructed generators:\n";
    for (const auto& [i, p] : gens.e)
        std::cout << "  e" << i << " = " << p.str() << "\n";
    return exit_ok;
}

int cmd_relation(int n, const std::string& format)
{
    RelationWitness w = solve_relation(n);
    FgAbGroup q = quotient_K12(n);
    if (format == "json") {
        FormulaReport fr = verify_formulas(n);
        std::cout << "{\"n\":" << n << ",\"lambda\":" << constants(n).lambda.str()
                  << ",\"quotient\":{\"order\":" << q.torsion_order().str()
                  << ",\"cyclic\":true},\"relation\":" << w.to_json(n) << ",\"formula_checks\":[";
        for (std::size_t i = 0; i < fr.checks.size(); ++i)
            std::cout << (i ? "," : "") << "{\"name\":\"" << fr.checks[i].name << "\",\"pass\":"
                      << (fr.checks[i].status != FormulaReport::Status::fail ? "true" : "false")
                      << "}";
        std::cout << "]}\n";
        return exit_ok;
    }
    std::cout << "degree-12 quotient at n = " << n << ": " << q.describe() << " (order "
              << q.torsion_order().str() << ")\n";
    std::cout << w.modulus.str() << " * alpha6 = " << w.b.str() << " * e4e2 + " << w.c.str()
              << " * e3^2 + " << w.d.str() << " * e2^3 + " << w.f.str() << " * e6\n";
    std::cout << "alpha6 = " << w.alpha6.str() << "\n";
    return exit_ok;
}

// ---------------------------------------------------------------------------
// verify suites
// ---------------------------------------------------------------------------

struct SuiteResult {
    int cases = 0;
    std::vector<std::string> failures;
};

void expect(SuiteResult& r, bool ok, const std::string& what)
{
    ++r.cases;
    if (!ok)
        r.failures.push_back(what);
}

void suite_theorem_11(SuiteResult& r, const Range& nr, const RuleTable& rules)
{
    for (int n = nr.lo; n <= nr.hi; ++n) {
        Int two = gcd(Int(2), Int(n)), five = gcd(Int(5), Int(n));
        for (int s = 12; s <= 14; ++s) {
            AssemblyReport rep = torsion_of_H(n, s, rules);
            std::vector<Int> want;
            Int order = (s == 12) ? two * five : two;
            if (order > 1)
                want.push_back(order);
            bool ok = rep.torsion.free_rank() == 0 && rep.torsion.invariant_factors() == want;
            expect(r, ok, "torsion mismatch at n=" + std::to_string(n) + " degree=" + std::to_string(s)
                          + " got " + rep.torsion.describe());
        }
    }
}

void suite_theorem_12(SuiteResult& r, const Range& nr)
{
    for (int n = nr.lo; n <= nr.hi; ++n) {
        try {
            GeneratorSequence gens = construct_e(n);
            FgAbGroup q = quotient_K12(n, gens);
            Int lam3 = gens.consts.lambda * gens.consts.lambda * gens.consts.lambda;
            expect(r, q.torsion_order() == lam3,
                   "quotient order at n=" + std::to_string(n) + ": " + q.describe());
        } catch (const std::exception& ex) {
            expect(r, false, std::string("n=") + std::to_string(n) + ": " + ex.what());
        }
    }
}

void suite_section_4(SuiteResult& r, const Range& nr)
{
    for (int n = nr.lo; n <= nr.hi; ++n) {
        FormulaReport rep = verify_formulas(n);
        for (const auto& c : rep.checks)
            expect(r, c.status != FormulaReport::Status::fail,
                   "n=" + std::to_string(n) + ": " + c.name);
        // lattice statements for weights 4 and 5
        GeneratorSequence gens = construct_e(n);
        InvariantBasis k4 = kn_basis(n, 4);
        std::vector<std::vector<Int>> rows4{coordinates(gens.product({2, 2}), k4.monomials)};
        if (n >= 4)
            rows4.push_back(coordinates(published_e4(n), k4.monomials));
        expect(r, lattice_equal(IntMatrix::from_rows(rows4), k4.rows),
               "weight-4 slice not spanned by {e2^2, e4} at n=" + std::to_string(n));
        InvariantBasis k5 = kn_basis(n, 5);
        std::vector<std::vector<Int>> rows5;
        if (n >= 3)
            rows5.push_back(coordinates(published_e2(n) * published_e3(n), k5.monomials));
        if (n >= 5)
            rows5.push_back(coordinates(gens.at(5), k5.monomials));
        if (rows5.empty())
            expect(r, k5.rank() == 0, "weight-5 slice should vanish at n=" + std::to_string(n));
        else
            expect(r, lattice_equal(IntMatrix::from_rows(rows5), k5.rows),
                   "weight-5 slice not spanned by {e2e3, e5} at n=" + std::to_string(n));
        if (n == 5) {
            RelationWitness w = solve_relation(5, with_published_formulas(gens),
                                               example_alpha6_rank5());
            expect(r, w.b == 25 && w.c == -3 && w.d == 119 && w.f == 0,
                   "rank-5 golden relation coefficients: got (" + w.b.str() + "," + w.c.str()
                       + "," + w.d.str() + "," + w.f.str() + ")");
        }
    }
}

void suite_rules_consistency(SuiteResult& r, const RuleTable& rules)
{
    try {
        rules.validate();
        expect(r, true, "");
    } catch (const std::exception& ex) {
        expect(r, false, std::string("validate: ") + ex.what());
    }
    std::string dumped = rules.to_json();
    expect(r, RuleTable::from_json(dumped).to_json() == dumped, "serialization round-trip");
    // every differential record must evaluate and name real classes for a
    // sample of ranks satisfying its condition
    for (const auto& rule : rules.rules()) {
        if (!rule.is_differential())
            continue;
        for (int n = 2; n <= 16; ++n) {
            if (!condition_holds(rule.n_condition, n))
                continue;
            try {
                eval_coeff_formula(rule.coeff_formula, n);
                PageEntry src = e4_entry(n, rule.s, rule.t);
                auto [ts, tt] = rule.target_bidegree();
                PageEntry tgt = e4_entry(n, ts, tt);
                expect(r, true, "");
            } catch (const std::exception& ex) {
                expect(r, false, "rule at page " + std::to_string(rule.page) + " n="
                                 + std::to_string(n) + ": " + ex.what());
            }
        }
    }
}

int cmd_verify(const std::string& suite, const Range& nr, const RuleTable& rules)
{
    SuiteResult r;
    bool known = false;
    if (suite == "theorem-1.1" || suite == "all") {
        suite_theorem_11(r, nr, rules);
        known = true;
    }
    if (suite == "theorem-1.2" || suite == "all") {
        suite_theorem_12(r, nr);
        known = true;
    }
    if (suite == "section-4" || suite == "all") {
        suite_section_4(r, nr);
        known = true;
    }
    if (suite == "rules-consistency" || suite == "all") {
        suite_rules_consistency(r, rules);
        known = true;
    }
    if (!known)
        throw CLI::ValidationError("--suite",
                                   "expected theorem-1.1, theorem-1.2, section-4, rules-consistency or all");
    std::cout << "suite " << suite << ": " << r.cases << " checks, " << r.failures.size()
              << " failures\n";
    for (const auto& f : r.failures)
        std::cout << "  FAIL: " << f << "\n";
    return r.failures.empty() ? exit_ok : exit_verification_failure;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact spectral-sequence computations for projective unitary classifying spaces"};
    app.require_subcommand(1);

    std::string rule_path;
    app.add_option("--rule-table", rule_path, "path to an alternative rule-table JSON file");

    // torsion
    auto* torsion = app.add_subcommand("torsion", "torsion of H^s in degrees 12..14");
    std::string t_n = "2..16", t_deg = "12..14", t_fmt = "markdown";
    torsion->add_option("--n", t_n, "rank or range A..B");
    torsion->add_option("--n-range", t_n, "rank range A..B");
    torsion->add_option("--deg", t_deg, "degree or range within 12..14");
    torsion->add_option("--format", t_fmt, "json or markdown")->check(CLI::IsMember({"json", "markdown"}));

    // page
    auto* page = app.add_subcommand("page", "inspect one spectral-sequence entry");
    int p_n = 6;
    std::string p_entry = "0,12", p_page = "3", p_fmt = "markdown";
    page->add_option("--n", p_n, "rank")->required();
    page->add_option("--entry", p_entry, "entry S,T")->required();
    page->add_option("--page", p_page, "3, 4 or inf");
    page->add_option("--format", p_fmt, "json or markdown")->check(CLI::IsMember({"json", "markdown"}));

    // invariants
    auto* inv = app.add_subcommand("invariants", "Weyl-invariant ring slices and generators");
    int i_n = 6, i_w = 6;
    std::string i_fmt = "markdown";
    inv->add_option("--n", i_n, "rank")->required();
    inv->add_option("--max-weight", i_w, "largest weight (<= 6)")->check(CLI::Range(1, 6));
    inv->add_option("--format", i_fmt, "json or markdown")->check(CLI::IsMember({"json", "markdown"}));

    // relation
    auto* rel = app.add_subcommand("relation", "degree-12 cyclic quotient and its witness relation");
    int r_n = 5;
    std::string r_fmt = "markdown";
    rel->add_option("--n", r_n, "rank")->required();
    rel->add_option("--format", r_fmt, "json or markdown")->check(CLI::IsMember({"json", "markdown"}));

    // verify
    auto* ver = app.add_subcommand("verify", "run a verification suite over a rank range");
    std::string v_suite = "all", v_n = "2..16";
    ver->add_option("--suite", v_suite, "theorem-1.1 | theorem-1.2 | section-4 | rules-consistency | all");
    ver->add_option("--n-range", v_n, "rank range A..B");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        RuleTable rules = load_rules(rule_path);
        if (torsion->parsed())
            return cmd_torsion(parse_range(t_n), parse_range(t_deg), t_fmt, rules);
        if (page->parsed())
            return cmd_page(p_n, p_entry, p_page, p_fmt, rules);
        if (inv->parsed())
            return cmd_invariants(i_n, i_w, i_fmt);
        if (rel->parsed())
            return cmd_relation(r_n, r_fmt);
        if (ver->parsed())
            return cmd_verify(v_suite, parse_range(v_n), rules);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::out_of_range& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return exit_verification_failure;
    }
    return exit_usage;
}
