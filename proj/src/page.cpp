#include "bpu/page.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bpu {

std::string PageLabel::str() const
{
    if (chern.is_unit())
        return base.str();
    if (base.is_unit())
        return chern.str();
    return chern.str() + "*" + base.str();
}

namespace {

Int localized_annihilator(const kz3::Monomial& m, Localization loc)
{
    Int a = kz3::annihilator(m);
    if (loc == Localization::two_local && a > 1)
        a = p_part(a, 2);
    return a;
}

/// Out-of-window entries and odd fiber degrees carry the zero group.
bool in_window(int s, int t)
{
    return s >= 0 && s <= kz3::max_degree && t >= 0 && t % 2 == 0;
}

std::string format_class(const std::vector<PageLabel>& labels, const std::vector<Int>& v)
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0)
            continue;
        Int c = v[i];
        if (!first)
            os << (c < 0 ? " - " : " + ");
        else if (c < 0)
            os << "-";
        Int mag = abs(c);
        if (mag != 1)
            os << mag.str() << "*";
        os << labels[i].str();
        first = false;
    }
    return first ? "0" : os.str();
}

} // namespace

PageEntry e3_entry(int n, int s, int t, Localization loc)
{
    if (n < 2)
        throw std::invalid_argument("e3_entry: need n >= 2");
    PageEntry e;
    e.n = n;
    e.s = s;
    e.t = t;
    e.page = 3;
    if (s < 0 || t < 0 || t % 2 != 0) {
        e.group = FgAbGroup::trivial();
        return e;
    }
    if (s > kz3::max_degree)
        throw std::out_of_range("e3_entry: base degree outside the presented range");
    std::vector<std::pair<std::size_t, Int>> rels;
    std::vector<std::string> names;
    for (const auto& cm : chern_basis(n, t / 2)) {
        for (const auto& km : kz3::monomials(s)) {
            Int a = localized_annihilator(km, loc);
            if (a == 1)
                continue;
            PageLabel lab{cm, km};
            names.push_back(lab.str());
            if (a > 0)
                rels.emplace_back(e.basis_labels.size(), a);
            e.basis_labels.push_back(std::move(lab));
        }
    }
    IntMatrix rel(e.basis_labels.size(), rels.size());
    for (std::size_t c = 0; c < rels.size(); ++c)
        rel.at(rels[c].first, c) = rels[c].second;
    e.group = FgAbGroup(e.basis_labels.size(), std::move(rel), std::move(names));
    return e;
}

GroupMap d3(int n, int s, int t, Localization loc)
{
    PageEntry src = e3_entry(n, s, t, loc);
    PageEntry tgt = e3_entry(n, s + 3, t - 2, loc);
    IntMatrix m(src.basis_labels.size(), tgt.basis_labels.size());
    std::map<std::pair<std::vector<int>, kz3::Monomial>, std::size_t> tix;
    for (std::size_t j = 0; j < tgt.basis_labels.size(); ++j)
        tix[{tgt.basis_labels[j].chern.parts, tgt.basis_labels[j].base}] = j;
    for (std::size_t i = 0; i < src.basis_labels.size() && !tgt.basis_labels.empty(); ++i) {
        const auto& [w, xi] = src.basis_labels[i];
        auto [xi1, alive] = kz3::mul_x1(xi);
        if (!alive || localized_annihilator(xi1, loc) == 1)
            continue;
        ChernPolynomial grad = divergence(ChernPolynomial::monomial(w, Int(1)), n);
        for (const auto& [q, c] : grad.terms()) {
            auto it = tix.find({q.parts, xi1});
            if (it != tix.end())
                m.at(i, it->second) += c;
        }
    }
    return GroupMap(std::move(src.group), std::move(tgt.group), std::move(m));
}

IntMatrix d3_matrix(int n, int s, int t)
{
    return d3(n, s, t).matrix();
}

namespace {

Localization loc_for(int s)
{
    return s == 0 ? Localization::integral : Localization::two_local;
}

LatticeQuotient e4_lattices(int n, int s, int t)
{
    Localization loc = loc_for(s);
    if (s + 3 <= kz3::max_degree || t < 2) {
        GroupMap d_out = d3(n, s, t, loc);
        GroupMap d_in = s >= 3 ? d3(n, s - 3, t + 2, loc)
                               : GroupMap::zero(FgAbGroup::trivial(), d_out.domain());
        return homology_lattices(d_in, d_out, loc);
    }
    // the outgoing differential lands beyond the presented base degrees; the
    // entry is still determined when the incoming image already fills it
    PageEntry mid = e3_entry(n, s, t, loc);
    GroupMap d_out = GroupMap::zero(mid.group, FgAbGroup::trivial());
    GroupMap d_in = s >= 3 ? d3(n, s - 3, t + 2, loc)
                           : GroupMap::zero(FgAbGroup::trivial(), mid.group);
    LatticeQuotient q = homology_lattices(d_in, d_out, loc);
    if (!q.group().is_trivial())
        throw std::runtime_error("e4_entry: (" + std::to_string(s) + "," + std::to_string(t)
                                 + ") is not determined by the presented range");
    return q;
}

PageEntry entry_from_state(int n, int s, int t, int page, const PageEntry& e3,
                           const LatticeQuotient& q)
{
    PageEntry e;
    e.n = n;
    e.s = s;
    e.t = t;
    e.page = page;
    e.basis_labels = e3.basis_labels;
    std::vector<std::string> names;
    for (const auto& rep : q.representatives())
        names.push_back(format_class(e.basis_labels, rep));
    FgAbGroup g = q.group();
    g.set_labels(std::move(names));
    e.group = std::move(g);
    return e;
}

} // namespace

PageEntry e4_entry(int n, int s, int t)
{
    PageEntry e3p = e3_entry(n, s, t, loc_for(s));
    if (!in_window(s, t)) {
        e3p.page = 4;
        return e3p;
    }
    return entry_from_state(n, s, t, 4, e3p, e4_lattices(n, s, t));
}

// ---------------------------------------------------------------------------
// class-label parsing over an entry's basis
// ---------------------------------------------------------------------------

namespace {

struct LabelParser {
    const std::string& src;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& what) const
    {
        throw std::invalid_argument("class label '" + src + "': " + what);
    }
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
    Int parse_int()
    {
        skip();
        std::size_t start = pos;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos])))
            ++pos;
        if (start == pos)
            fail("expected integer");
        return Int(src.substr(start, pos - start));
    }
    std::string parse_ident()
    {
        skip();
        std::size_t start = pos;
        while (pos < src.size()
               && (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
            ++pos;
        if (start == pos)
            fail("expected identifier");
        return src.substr(start, pos - start);
    }

    /// coefficient, chern monomial, base monomial of one product term
    std::tuple<Int, ChernMonomial, kz3::Monomial> parse_term()
    {
        Int coeff = 1;
        std::vector<int> parts;
        kz3::Monomial base;
        bool first = true;
        while (true) {
            skip();
            if (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos])) && first) {
                coeff = parse_int();
            } else {
                std::string id = parse_ident();
                int expo = 1;
                if (eat('^'))
                    expo = static_cast<int>(parse_int());
                if (id.size() >= 2 && id[0] == 'c' && std::isdigit(static_cast<unsigned char>(id[1]))) {
                    int k = std::stoi(id.substr(1));
                    for (int r = 0; r < expo; ++r)
                        parts.push_back(k);
                } else {
                    bool found = false;
                    for (int gidx = 0; gidx < kz3::generator_count; ++gidx)
                        if (id == kz3::names[gidx]) {
                            base.e[gidx] += expo;
                            found = true;
                            break;
                        }
                    if (!found)
                        fail("unknown generator '" + id + "'");
                }
            }
            first = false;
            if (!eat('*'))
                break;
        }
        return {coeff, ChernMonomial(std::move(parts)), base};
    }
};

std::vector<Int> parse_class(const PageEntry& e3, const std::string& label)
{
    std::vector<Int> v(e3.basis_labels.size(), Int(0));
    LabelParser p{label};
    Int sign = 1;
    p.skip();
    if (p.eat('-'))
        sign = -1;
    while (true) {
        auto [coeff, chern, base] = p.parse_term();
        PageLabel want{chern, base};
        auto it = std::find(e3.basis_labels.begin(), e3.basis_labels.end(), want);
        if (it == e3.basis_labels.end())
            throw std::invalid_argument("rule references class '" + want.str()
                                        + "' absent from the entry basis at (" + std::to_string(e3.s)
                                        + "," + std::to_string(e3.t) + ")");
        v[static_cast<std::size_t>(it - e3.basis_labels.begin())] += sign * coeff;
        p.skip();
        if (p.eat('+'))
            sign = 1;
        else if (p.eat('-'))
            sign = -1;
        else
            break;
    }
    p.skip();
    if (p.pos != label.size())
        p.fail("trailing input");
    return v;
}

// ---------------------------------------------------------------------------
// stable-page engine
// ---------------------------------------------------------------------------

constexpr int max_page = kz3::max_degree; // no differential beyond d_15 matters here

struct EinfContext {
    int n;
    const RuleTable& rules;
    std::map<std::pair<int, int>, PageEntry> e3s;
    std::map<std::pair<int, int>, LatticeQuotient> states;

    const PageEntry& e3(int s, int t)
    {
        auto key = std::make_pair(s, t);
        auto it = e3s.find(key);
        if (it == e3s.end())
            it = e3s.emplace(key, e3_entry(n, s, t, loc_for(s))).first;
        return it->second;
    }
    LatticeQuotient& state(int s, int t)
    {
        auto key = std::make_pair(s, t);
        auto it = states.find(key);
        if (it == states.end())
            it = states.emplace(key, e4_lattices(n, s, t)).first;
        return it->second;
    }

    bool structurally_zero(int s, int t)
    {
        if (!in_window(s, t))
            return true;
        return e3(s, t).basis_labels.empty();
    }

    bool e4_zero(int s, int t)
    {
        if (structurally_zero(s, t))
            return true;
        return state(s, t).group().is_trivial();
    }

    /// Every class of the entry's current group is spanned by permanence
    /// records, so no differential can involve the entry.
    bool wholly_permanent(int s, int t)
    {
        auto perms = rules.permanence_at(s, t, n);
        if (perms.empty())
            return false;
        if (structurally_zero(s, t))
            return true;
        LatticeQuotient& q = state(s, t);
        // quotienting by the permanent classes must kill the whole entry
        LatticeQuotient probe = q;
        for (const DifferentialRule* r : perms) {
            std::vector<Int> v = parse_class(e3(s, t), r->source_label);
            if (!q.contains_cycle(v))
                throw std::runtime_error("permanence record names a non-cycle at ("
                                         + std::to_string(s) + "," + std::to_string(t) + ")");
            probe.add_boundary(std::move(v));
        }
        return probe.group().is_trivial();
    }
};

/// Apply one differential record. `focus` is the entry whose stable value is
/// being computed; only the focus side gets the full determination check.
void apply_rule(EinfContext& ctx, const DifferentialRule& rule, std::pair<int, int> focus)
{
    auto [ts, tt] = rule.target_bidegree();
    LatticeQuotient& src = ctx.state(rule.s, rule.t);
    LatticeQuotient& tgt = ctx.state(ts, tt);
    std::vector<Int> a = parse_class(ctx.e3(rule.s, rule.t), rule.source_label);
    std::vector<Int> b = parse_class(ctx.e3(ts, tt), rule.target_label);
    if (!src.contains_cycle(a))
        throw std::runtime_error("rule/computation mismatch: source class '" + rule.source_label
                                 + "' is not a cycle at (" + std::to_string(rule.s) + ","
                                 + std::to_string(rule.t) + ")");
    if (!tgt.contains_cycle(b))
        throw std::runtime_error("rule/computation mismatch: target class '" + rule.target_label
                                 + "' is not a cycle at (" + std::to_string(ts) + ","
                                 + std::to_string(tt) + ")");
    Int k = eval_coeff_formula(rule.coeff_formula, ctx.n);
    std::vector<Int> kb(b.size());
    for (std::size_t j = 0; j < b.size(); ++j)
        kb[j] = k * b[j];

    bool image_zero = tgt.class_is_zero(kb) || src.class_is_zero(a);
    if (image_zero)
        return; // proved vanishing (or source already dead): no effect

    // the differential is nonzero: the target class dies, and the source
    // class supports a nonzero differential.
    tgt.add_boundary(std::move(kb));
    if (focus == std::make_pair(rule.s, rule.t)) {
        // the rule determines the focus entry only when it kills everything
        const FgAbGroup& g = src.group();
        if (g.free_rank() == 0 && g.invariant_factors().size() == 1
            && g.invariant_factors()[0] == 2 && !src.class_is_zero(a))
            src.collapse();
        else
            throw std::runtime_error("rule at page " + std::to_string(rule.page)
                                     + " does not determine the kernel at ("
                                     + std::to_string(rule.s) + "," + std::to_string(rule.t) + ")");
    }
}

[[noreturn]] void undetermined(int n, int s, int t, int r, const std::string& dir,
                               std::pair<int, int> other)
{
    std::ostringstream os;
    os << "einf_entry: no recorded fact justifies the page-" << r << " " << dir << " differential "
       << (dir == "incoming" ? "from" : "to") << " (" << other.first << "," << other.second
       << ") at entry (" << s << "," << t << "), n = " << n;
    throw std::runtime_error(os.str());
}

} // namespace

PageEntry einf_entry(int n, int s, int t, const RuleTable& rules)
{
    if (!(s + t <= 14 || (s == 15 && t == 0)))
        throw std::out_of_range("einf_entry: only total degree <= 14 and the (15,0) entry are supported");
    if (!in_window(s, t)) {
        PageEntry e;
        e.n = n;
        e.s = s;
        e.t = t;
        e.page = max_page + 1;
        return e;
    }

    EinfContext ctx{n, rules, {}, {}};
    const std::pair<int, int> focus{s, t};
    ctx.state(s, t);

    // pages at which an explicit record covers the focus entry
    std::set<int> rule_in, rule_out;
    for (int r = 4; r <= max_page; ++r)
        for (const DifferentialRule* rule : rules.differentials_at_page(r, n)) {
            if (std::make_pair(rule->s, rule->t) == focus)
                rule_out.insert(r);
            if (rule->target_bidegree() == focus)
                rule_in.insert(r);
        }

    for (int r = 4; r <= max_page; ++r) {
        for (const DifferentialRule* rule : rules.differentials_at_page(r, n))
            if (std::make_pair(rule->s, rule->t) == focus || rule->target_bidegree() == focus)
                apply_rule(ctx, *rule, focus);

        // incoming d_r from (s-r, t+r-1)
        if (r <= s && !rule_in.count(r)) {
            std::pair<int, int> from{s - r, t + r - 1};
            bool ok = ctx.structurally_zero(from.first, from.second)
                      || ctx.state(s, t).group().is_trivial()
                      || ctx.e4_zero(from.first, from.second)
                      || (from.first == 0 && rules.has_column_degeneration())
                      || ctx.wholly_permanent(s, t)
                      || ctx.wholly_permanent(from.first, from.second);
            if (!ok)
                undetermined(n, s, t, r, "incoming", from);
        }
        // outgoing d_r to (s+r, t-r+1)
        if (r <= t + 1 && !rule_out.count(r)) {
            std::pair<int, int> to{s + r, t - r + 1};
            bool ok = (s == 0 && rules.has_column_degeneration())
                      || ctx.state(s, t).group().is_trivial()
                      || ctx.structurally_zero(to.first, to.second)
                      || ctx.e4_zero(to.first, to.second)
                      || ctx.wholly_permanent(s, t);
            if (!ok)
                undetermined(n, s, t, r, "outgoing", to);
        }
    }
    return entry_from_state(n, s, t, max_page + 1, ctx.e3(s, t), ctx.state(s, t));
}

// ---------------------------------------------------------------------------
// assembly
// ---------------------------------------------------------------------------

std::string to_string(SplitVerdict v)
{
    switch (v) {
    case SplitVerdict::split_by_free_top: return "split-by-free-top";
    case SplitVerdict::unambiguous_single_entry: return "unambiguous-single-entry";
    case SplitVerdict::extension_ambiguous: return "extension-ambiguous";
    }
    return "?";
}

namespace {

FgAbGroup direct_sum(const std::vector<const FgAbGroup*>& parts)
{
    std::vector<Int> factors;
    std::size_t free_rank = 0;
    for (const FgAbGroup* g : parts) {
        free_rank += g->free_rank();
        for (const Int& d : g->invariant_factors())
            factors.push_back(d);
    }
    IntMatrix rel(factors.size() + free_rank, factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i)
        rel.at(i, i) = factors[i];
    return FgAbGroup(factors.size() + free_rank, std::move(rel));
}

FgAbGroup cyclic(const Int& order)
{
    if (order <= 1)
        return FgAbGroup::trivial();
    IntMatrix rel(1, 1);
    rel.at(0, 0) = order;
    return FgAbGroup(1, std::move(rel));
}

long count_weight_partitions_min2(int w, int n)
{
    // partitions of w into parts between 2 and n
    std::vector<std::vector<long>> memo(static_cast<std::size_t>(w) + 1,
                                        std::vector<long>(static_cast<std::size_t>(n) + 1, -1));
    std::function<long(int, int)> rec = [&](int rem, int mx) -> long {
        if (rem == 0)
            return 1;
        if (mx < 2)
            return 0;
        long& m = memo[static_cast<std::size_t>(rem)][static_cast<std::size_t>(mx)];
        if (m >= 0)
            return m;
        long total = 0;
        for (int p = std::min(rem, mx); p >= 2; --p)
            total += rec(rem - p, p);
        return m = total;
    };
    return rec(w, std::min(w, n));
}

} // namespace

AssemblyReport torsion_of_H(int n, int s, const RuleTable& rules)
{
    if (s < 12 || s > 14)
        throw std::invalid_argument("torsion_of_H: degree must be 12, 13 or 14");
    if (n < 2)
        throw std::invalid_argument("torsion_of_H: need n >= 2");

    AssemblyReport rep;
    rep.n = n;
    rep.degree = s;

    Int five = gcd(Int(5), Int(n));
    FgAbGroup five_part = (s == 12) ? cyclic(five) : FgAbGroup::trivial();

    if (n % 2 != 0) {
        // p-torsion vanishes for p not dividing n, and the 2-localized pages
        // are empty for odd n; only the hard-coded 5-primary input survives.
        rep.verdict = SplitVerdict::split_by_free_top;
        rep.free_top_rank = (s % 2 == 0)
            ? static_cast<std::size_t>(count_weight_partitions_min2(s / 2, n))
            : 0;
        rep.torsion = five_part;
        return rep;
    }

    // the presentation forces the (14,0) corner to vanish; anything else
    // would mean the presented base ring is inconsistent with this range
    if (s == 14 && !e3_entry(n, 14, 0).group.is_trivial())
        throw std::runtime_error("torsion_of_H: nonzero (14,0) entry contradicts the presented base ring");

    std::vector<const FgAbGroup*> nonzero;
    for (int s1 = 1; s1 <= s; ++s1) {
        int t1 = s - s1;
        if (!in_window(s1, t1))
            continue;
        PageEntry e = einf_entry(n, s1, t1, rules);
        if (e.basis_labels.empty())
            continue;
        rep.entries.push_back({s1, t1, e.group});
    }
    for (const auto& entry : rep.entries)
        if (!entry.group.is_trivial())
            nonzero.push_back(&entry.group);

    PageEntry top = einf_entry(n, 0, s, rules);
    rep.free_top_rank = top.group.free_rank();

    if (nonzero.empty())
        rep.verdict = SplitVerdict::split_by_free_top;
    else if (nonzero.size() == 1)
        rep.verdict = rep.free_top_rank > 0 ? SplitVerdict::split_by_free_top
                                            : SplitVerdict::unambiguous_single_entry;
    else
        rep.verdict = SplitVerdict::extension_ambiguous;

    std::vector<const FgAbGroup*> sum = nonzero;
    if (!five_part.is_trivial())
        sum.push_back(&five_part);
    FgAbGroup graded = direct_sum(sum);

    if (rep.verdict == SplitVerdict::extension_ambiguous) {
        // report both bounds rather than an answer
        rep.torsion = graded;
        rep.torsion_bounds = {graded, cyclic(graded.torsion_order())};
    } else {
        rep.torsion = graded;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// serialization
// ---------------------------------------------------------------------------

namespace {

std::string group_json(const FgAbGroup& g)
{
    std::ostringstream os;
    os << "{\"free_rank\":" << g.free_rank() << ",\"invariant_factors\":[";
    const auto& inv = g.invariant_factors();
    for (std::size_t i = 0; i < inv.size(); ++i)
        os << (i ? "," : "") << inv[i].str();
    os << "]}";
    return os.str();
}

std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\')
            out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

} // namespace

std::string PageEntry::to_json() const
{
    std::ostringstream os;
    os << "{\"n\":" << n << ",\"s\":" << s << ",\"t\":" << t << ",\"page\":"
       << (page > kz3::max_degree ? std::string("\"inf\"") : std::to_string(page))
       << ",\"group\":" << group_json(group) << ",\"labels\":[";
    const auto& ls = group.labels();
    for (std::size_t i = 0; i < ls.size(); ++i)
        os << (i ? "," : "") << "\"" << escape(ls[i]) << "\"";
    os << "],\"basis\":[";
    for (std::size_t i = 0; i < basis_labels.size(); ++i)
        os << (i ? "," : "") << "\"" << escape(basis_labels[i].str()) << "\"";
    os << "]}";
    return os.str();
}

std::string AssemblyReport::to_json() const
{
    std::ostringstream os;
    os << "{\"n\":" << n << ",\"degree\":" << degree << ",\"entries\":[";
    for (std::size_t i = 0; i < entries.size(); ++i) {
        os << (i ? "," : "") << "{\"s\":" << entries[i].s << ",\"t\":" << entries[i].t
           << ",\"group\":" << group_json(entries[i].group) << "}";
    }
    os << "],\"free_top_rank\":" << free_top_rank << ",\"verdict\":\"" << to_string(verdict)
       << "\",\"torsion\":{\"invariant_factors\":[";
    const auto& inv = torsion.invariant_factors();
    for (std::size_t i = 0; i < inv.size(); ++i)
        os << (i ? "," : "") << inv[i].str();
    os << "]}";
    if (torsion_bounds) {
        os << ",\"torsion_bounds\":{\"associated_graded\":" << group_json(torsion_bounds->first)
           << ",\"maximal_extension\":" << group_json(torsion_bounds->second) << "}";
    }
    os << "}";
    return os.str();
}

} // namespace bpu
