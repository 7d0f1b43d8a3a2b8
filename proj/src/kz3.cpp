#include "bpu/kz3.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bpu {
namespace kz3 {

namespace {
// relation multiplier and the generator power it applies from
constexpr std::array<int, generator_count> rel_multiplier{2, 3, 2, 5, 2};
constexpr std::array<int, generator_count> rel_power{2, 1, 1, 1, 1}; // 2*x1^2, 3*y30, ...
} // namespace

int Monomial::degree() const
{
    int d = 0;
    for (int i = 0; i < generator_count; ++i)
        d += e[i] * degrees[i];
    return d;
}

bool Monomial::is_unit() const
{
    return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

std::string Monomial::str() const
{
    if (is_unit())
        return "1";
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < generator_count; ++i) {
        if (e[i] == 0)
            continue;
        os << (first ? "" : "*") << names[i];
        if (e[i] > 1)
            os << "^" << e[i];
        first = false;
    }
    return os.str();
}

Monomial generator(int idx)
{
    if (idx < 0 || idx >= generator_count)
        throw std::invalid_argument("kz3::generator: index out of range");
    Monomial m;
    m.e[idx] = 1;
    return m;
}

Int annihilator(const Monomial& m)
{
    if (m.degree() > max_degree)
        throw std::out_of_range("kz3::annihilator: degree exceeds the presented range");
    Int g = 0;
    for (int i = 0; i < generator_count; ++i)
        if (m.e[i] >= rel_power[i])
            g = gcd(g, Int(rel_multiplier[i]));
    return g; // 0 = free (only 1 and x1 reach here)
}

std::vector<Monomial> monomials(int degree)
{
    if (degree < 0 || degree > max_degree)
        throw std::out_of_range("kz3::monomials: degree outside [0,15]");
    std::vector<Monomial> out;
    // exponent bounds within total degree 15: x1 <= 5, others <= 1
    for (int a = 5; a >= 0; --a)
        for (int b = 1; b >= 0; --b)
            for (int c = 1; c >= 0; --c)
                for (int d = 1; d >= 0; --d)
                    for (int f = 1; f >= 0; --f) {
                        Monomial m{{a, b, c, d, f}};
                        if (m.degree() != degree)
                            continue;
                        if (annihilator(m) == 1)
                            continue;
                        out.push_back(m);
                    }
    std::sort(out.begin(), out.end());
    return out;
}

FgAbGroup degree_group(int degree)
{
    auto ms = monomials(degree);
    std::size_t g = ms.size();
    std::vector<std::pair<std::size_t, Int>> rels;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < g; ++i) {
        labels.push_back(ms[i].str());
        Int a = annihilator(ms[i]);
        if (a > 0)
            rels.emplace_back(i, a);
    }
    IntMatrix rel(g, rels.size());
    for (std::size_t c = 0; c < rels.size(); ++c)
        rel.at(rels[c].first, c) = rels[c].second;
    return FgAbGroup(g, std::move(rel), std::move(labels));
}

Element Element::monomial_element(const Monomial& m, Int c)
{
    Element e;
    e.add(m, std::move(c));
    return e;
}

void Element::add(const Monomial& m, Int c)
{
    Int a = annihilator(m);
    if (a == 1)
        return;
    if (a > 0)
        c = mod_floor(c, a);
    if (c == 0)
        return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (a > 0)
            it->second = mod_floor(it->second, a);
        if (it->second == 0)
            terms_.erase(it);
    }
}

Element Element::operator+(const Element& rhs) const
{
    Element out = *this;
    for (const auto& [m, c] : rhs.terms_)
        out.add(m, c);
    return out;
}

Element Element::scaled(const Int& s) const
{
    Element out;
    for (const auto& [m, c] : terms_)
        out.add(m, c * s);
    return out;
}

std::string Element::str() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        os << (first ? "" : " + ");
        if (c != 1)
            os << c.str() << "*";
        os << m.str();
        first = false;
    }
    return os.str();
}

std::pair<Monomial, bool> mul_x1(const Monomial& m)
{
    Monomial p = m;
    p.e[0] += 1;
    if (p.degree() > max_degree)
        throw std::out_of_range("kz3::mul_x1: product degree exceeds the presented range");
    return {p, annihilator(p) != 1};
}

Element mul_x1(const Element& e)
{
    Element out;
    for (const auto& [m, c] : e.terms()) {
        auto [p, alive] = mul_x1(m);
        if (alive)
            out.add(p, c);
    }
    return out;
}

} // namespace kz3
} // namespace bpu
