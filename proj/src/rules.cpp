#include "bpu/rules.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace bpu {

// ---------------------------------------------------------------------------
// condition DSL
// ---------------------------------------------------------------------------

namespace {

std::string strip(const std::string& s)
{
    std::size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos)
        return "";
    std::size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

bool atom_holds(const std::string& atom, int n)
{
    if (atom == "all")
        return true;
    if (atom == "even")
        return n % 2 == 0;
    if (atom == "odd")
        return n % 2 != 0;
    // "n % M == R" or "n >= K"
    std::istringstream is(atom);
    std::string var;
    is >> var;
    if (var != "n")
        throw std::invalid_argument("rule condition: expected 'n' in '" + atom + "'");
    std::string op;
    is >> op;
    if (op == "%") {
        long m = 0, r = 0;
        std::string eq;
        is >> m >> eq >> r;
        if (eq != "==" || m <= 0 || is.fail())
            throw std::invalid_argument("rule condition: bad modulus atom '" + atom + "'");
        return n % m == r;
    }
    if (op == ">=") {
        long k = 0;
        is >> k;
        if (is.fail())
            throw std::invalid_argument("rule condition: bad bound atom '" + atom + "'");
        return n >= k;
    }
    throw std::invalid_argument("rule condition: unknown operator in '" + atom + "'");
}

} // namespace

bool condition_holds(const std::string& condition, int n)
{
    std::string c = strip(condition);
    if (c.empty())
        throw std::invalid_argument("rule condition: empty");
    std::size_t pos = 0;
    while (true) {
        std::size_t amp = c.find("&&", pos);
        std::string atom = strip(c.substr(pos, amp == std::string::npos ? amp : amp - pos));
        if (!atom_holds(atom, n))
            return false;
        if (amp == std::string::npos)
            return true;
        pos = amp + 2;
    }
}

// ---------------------------------------------------------------------------
// coefficient formulas: expr := term (('+'|'-') term)*; term := factor ('*' factor)*;
// factor := INT | 'n' | 'binom' '(' expr ',' expr ')' | '(' expr ')' | '-' factor
// ---------------------------------------------------------------------------

namespace {

struct FormulaParser {
    const std::string& src;
    std::size_t pos = 0;

    void skip()
    {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos])))
            ++pos;
    }
    bool eat(char c)
    {
        skip();
        if (pos < src.size() && src[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) const
    {
        throw std::invalid_argument("coefficient formula '" + src + "': " + what);
    }

    Int parse_expr(int n)
    {
        Int v = parse_term(n);
        while (true) {
            skip();
            if (eat('+'))
                v += parse_term(n);
            else if (eat('-'))
                v -= parse_term(n);
            else
                return v;
        }
    }
    Int parse_term(int n)
    {
        Int v = parse_factor(n);
        while (true) {
            skip();
            if (eat('*'))
                v *= parse_factor(n);
            else
                return v;
        }
    }
    Int parse_factor(int n)
    {
        skip();
        if (pos >= src.size())
            fail("unexpected end");
        if (eat('-'))
            return -parse_factor(n);
        if (eat('(')) {
            Int v = parse_expr(n);
            if (!eat(')'))
                fail("missing ')'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(src[pos]))) {
            std::size_t start = pos;
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos])))
                ++pos;
            return Int(src.substr(start, pos - start));
        }
        if (src.compare(pos, 5, "binom") == 0) {
            pos += 5;
            if (!eat('('))
                fail("binom expects '('");
            Int a = parse_expr(n);
            if (!eat(','))
                fail("binom expects ','");
            Int k = parse_expr(n);
            if (!eat(')'))
                fail("binom expects ')'");
            if (k < 0 || k > 64)
                fail("binom second argument out of range");
            return binomial(a, static_cast<long>(k));
        }
        if (src[pos] == 'n') {
            ++pos;
            return Int(n);
        }
        fail("unexpected character");
    }
};

} // namespace

Int eval_coeff_formula(const std::string& formula, int n)
{
    FormulaParser p{formula};
    Int v = p.parse_expr(n);
    p.skip();
    if (p.pos != formula.size())
        p.fail("trailing input");
    return v;
}

// ---------------------------------------------------------------------------
// RuleTable
// ---------------------------------------------------------------------------

RuleTable::RuleTable(std::vector<DifferentialRule> rules) : rules_(std::move(rules))
{
    validate();
}

void RuleTable::validate() const
{
    for (const auto& r : rules_) {
        if (r.page != 0 && r.page < 4)
            throw std::invalid_argument("rule table: differential pages start at 4");
        if (r.s < 0 || (r.t < 0 && !r.is_column_degeneration()))
            throw std::invalid_argument("rule table: negative bidegree");
        if (r.is_differential()) {
            auto [ts, tt] = r.target_bidegree();
            if (tt < 0 || ts > 15)
                throw std::invalid_argument("rule table: target bidegree outside the supported window");
            if (r.source_label.empty() || r.target_label.empty())
                throw std::invalid_argument("rule table: differential record needs source and target");
            eval_coeff_formula(r.coeff_formula, 2); // parse check
        }
        condition_holds(r.n_condition.empty() ? "all" : r.n_condition, 2); // parse check
    }
}

std::vector<const DifferentialRule*> RuleTable::differentials_at_page(int page, int n) const
{
    std::vector<const DifferentialRule*> out;
    for (const auto& r : rules_)
        if (r.is_differential() && r.page == page && condition_holds(r.n_condition, n))
            out.push_back(&r);
    return out;
}

std::vector<const DifferentialRule*> RuleTable::permanence_at(int s, int t, int n) const
{
    std::vector<const DifferentialRule*> out;
    for (const auto& r : rules_)
        if (r.is_permanence() && r.s == s && r.t == t && condition_holds(r.n_condition, n))
            out.push_back(&r);
    return out;
}

bool RuleTable::has_column_degeneration() const
{
    for (const auto& r : rules_)
        if (r.is_column_degeneration())
            return true;
    return false;
}

RuleTable RuleTable::from_json(const std::string& text)
{
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.is_array())
        throw std::invalid_argument("rule table: expected a JSON array");
    std::vector<DifferentialRule> rules;
    for (const auto& rec : j) {
        DifferentialRule r;
        r.page = rec.at("page").get<int>();
        r.s = rec.at("s").get<int>();
        r.t = rec.at("t").get<int>();
        r.n_condition = rec.at("n_condition").get<std::string>();
        r.source_label = rec.at("source_label").get<std::string>();
        r.coeff_formula = rec.at("coeff_formula").get<std::string>();
        r.target_label = rec.at("target_label").get<std::string>();
        r.citation = rec.at("citation").get<std::string>();
        rules.push_back(std::move(r));
    }
    return RuleTable(std::move(rules));
}

RuleTable RuleTable::load_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("rule table: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

std::string RuleTable::to_json() const
{
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rules_) {
        nlohmann::ordered_json rec;
        rec["page"] = r.page;
        rec["s"] = r.s;
        rec["t"] = r.t;
        rec["n_condition"] = r.n_condition;
        rec["source_label"] = r.source_label;
        rec["coeff_formula"] = r.coeff_formula;
        rec["target_label"] = r.target_label;
        rec["citation"] = r.citation;
        arr.push_back(std::move(rec));
    }
    return arr.dump(2) + "\n";
}

// The shipped table. data/rules.json carries the identical text; a unit test
// keeps the two in sync.
RuleTable RuleTable::builtin()
{
    static const char* text = R"RULES([
  {
    "page": 7,
    "s": 3,
    "t": 10,
    "n_condition": "n % 4 == 0",
    "source_label": "2*c4*c1*x1",
    "coeff_formula": "binom(n-1,3)",
    "target_label": "c1^2*y21",
    "citation": "transgression computed by comparison with the maximal-torus fibration; parity of binom(n-1,3) decides"
  },
  {
    "page": 7,
    "s": 3,
    "t": 8,
    "n_condition": "even && n >= 4",
    "source_label": "2*c4*x1",
    "coeff_formula": "binom(n-1,3)",
    "target_label": "c1*y21",
    "citation": "maximal-torus comparison, weight-4 analogue of the (3,10) differential"
  },
  {
    "page": 7,
    "s": 3,
    "t": 8,
    "n_condition": "even",
    "source_label": "c2^2*x1",
    "coeff_formula": "binom(n,2)",
    "target_label": "c1*y21",
    "citation": "maximal-torus comparison, weight-4 analogue of the (3,10) differential"
  },
  {
    "page": 9,
    "s": 6,
    "t": 8,
    "n_condition": "n % 4 == 2",
    "source_label": "c2^2*x1^2",
    "coeff_formula": "1",
    "target_label": "x1^5 + y2_01",
    "citation": "mod-2 Steenrod computation in rank 2 transported along the diagonal embedding"
  },
  {
    "page": 9,
    "s": 6,
    "t": 8,
    "n_condition": "n % 4 == 0",
    "source_label": "c2^2*x1^2",
    "coeff_formula": "0",
    "target_label": "x1^5 + y2_01",
    "citation": "the two degree-15 base classes stay independent after restriction to rank 4, so the differential vanishes"
  },
  {
    "page": 0,
    "s": 12,
    "t": 0,
    "n_condition": "even",
    "source_label": "x1^4",
    "coeff_formula": "0",
    "target_label": "",
    "citation": "x1^4 restricts nontrivially to the total space, hence is a permanent cycle"
  },
  {
    "page": 0,
    "s": 13,
    "t": 0,
    "n_condition": "even",
    "source_label": "x1*y21",
    "coeff_formula": "0",
    "target_label": "",
    "citation": "x1*y21 restricts nontrivially to the total space, hence is a permanent cycle"
  },
  {
    "page": 0,
    "s": 10,
    "t": 4,
    "n_condition": "even",
    "source_label": "c1^2*y21",
    "coeff_formula": "0",
    "target_label": "",
    "citation": "product of the permanent classes c1^2 (degree-4 invariant) and y21"
  },
  {
    "page": 0,
    "s": 0,
    "t": -1,
    "n_condition": "all",
    "source_label": "*",
    "coeff_formula": "0",
    "target_label": "",
    "citation": "the left column equals the Weyl-invariant ring and supports no differential after page 3"
  }
]
)RULES";
    return from_json(text);
}

} // namespace bpu
