#include "bpu/chern.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace bpu {

ChernMonomial::ChernMonomial(std::vector<int> p) : parts(std::move(p))
{
    for (int x : parts)
        if (x < 1)
            throw std::invalid_argument("ChernMonomial: parts must be positive");
    std::sort(parts.begin(), parts.end(), std::greater<int>());
}

int ChernMonomial::weight() const
{
    int w = 0;
    for (int p : parts)
        w += p;
    return w;
}

std::vector<int> ChernMonomial::exponents(int n) const
{
    if (max_part() > n)
        throw std::invalid_argument("ChernMonomial: part exceeds rank");
    std::vector<int> e(n, 0);
    for (int p : parts)
        ++e[p - 1];
    return e;
}

std::string ChernMonomial::str() const
{
    if (parts.empty())
        return "1";
    std::ostringstream os;
    std::size_t i = 0;
    bool first = true;
    while (i < parts.size()) {
        std::size_t j = i;
        while (j < parts.size() && parts[j] == parts[i])
            ++j;
        os << (first ? "" : "*") << "c" << parts[i];
        if (j - i > 1)
            os << "^" << (j - i);
        first = false;
        i = j;
    }
    return os.str();
}

ChernMonomial operator*(const ChernMonomial& a, const ChernMonomial& b)
{
    std::vector<int> parts = a.parts;
    parts.insert(parts.end(), b.parts.begin(), b.parts.end());
    return ChernMonomial(std::move(parts));
}

bool ChernOrder::operator()(const ChernMonomial& a, const ChernMonomial& b) const
{
    if (a.parts.size() != b.parts.size())
        return a.parts.size() < b.parts.size();
    // same number of parts: descending lexicographic, larger partition first
    return std::lexicographical_compare(b.parts.begin(), b.parts.end(),
                                        a.parts.begin(), a.parts.end());
}

std::vector<ChernMonomial> chern_basis(int n, int weight)
{
    if (n < 1 || weight < 0)
        throw std::invalid_argument("chern_basis: need n >= 1, weight >= 0");
    std::vector<ChernMonomial> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int rem, int mx) {
        if (rem == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int p = std::min(rem, mx); p >= 1; --p) {
            cur.push_back(p);
            rec(rem - p, p);
            cur.pop_back();
        }
    };
    rec(weight, std::min(weight, n));
    std::sort(out.begin(), out.end(), ChernOrder{});
    return out;
}

namespace {

template <typename Coeff>
ChernPoly<Coeff> divergence_impl(const ChernPoly<Coeff>& p, int n)
{
    ChernPoly<Coeff> out;
    for (const auto& [m, c] : p.terms()) {
        if (m.max_part() > n)
            throw std::invalid_argument("divergence: monomial part exceeds rank");
        std::size_t i = 0;
        while (i < m.parts.size()) {
            std::size_t j = i;
            while (j < m.parts.size() && m.parts[j] == m.parts[i])
                ++j;
            int k = m.parts[i];
            long mult = static_cast<long>(j - i);
            // d/dc_k contributes mult * (n-k+1) * (monomial with one k -> k-1)
            Int factor = Int(mult) * Int(n - k + 1);
            if (factor != 0) {
                std::vector<int> q;
                q.reserve(m.parts.size());
                bool dropped = false;
                for (std::size_t t = 0; t < m.parts.size(); ++t) {
                    if (!dropped && m.parts[t] == k) {
                        dropped = true;
                        if (k - 1 >= 1)
                            q.push_back(k - 1);
                        continue;
                    }
                    q.push_back(m.parts[t]);
                }
                out.add(ChernMonomial(std::move(q)), c * Coeff(factor));
            }
            i = j;
        }
    }
    return out;
}

} // namespace

ChernPolynomial divergence(const ChernPolynomial& p, int n) { return divergence_impl(p, n); }
ChernPolynomialQ divergence(const ChernPolynomialQ& p, int n) { return divergence_impl(p, n); }

VPolynomial expand_in_v(const ChernPolynomial& p, int n)
{
    if (p.max_part() > n)
        throw std::invalid_argument("expand_in_v: monomial part exceeds rank");
    // elementary symmetric polynomial sigma_i as a VPolynomial
    auto sigma = [&](int i) {
        VPolynomial s;
        std::vector<int> idx(i);
        std::function<void(int, int)> rec = [&](int pos, int start) {
            if (pos == i) {
                std::vector<int> e(n, 0);
                for (int t : idx)
                    e[t] = 1;
                s[e] = 1;
                return;
            }
            for (int v = start; v < n; ++v) {
                idx[pos] = v;
                rec(pos + 1, v + 1);
            }
        };
        if (i == 0)
            s[std::vector<int>(n, 0)] = 1;
        else
            rec(0, 0);
        return s;
    };
    auto vmul = [&](const VPolynomial& a, const VPolynomial& b) {
        VPolynomial c;
        for (const auto& [ea, ca] : a)
            for (const auto& [eb, cb] : b) {
                std::vector<int> e(n);
                for (int j = 0; j < n; ++j)
                    e[j] = ea[j] + eb[j];
                auto [it, fresh] = c.emplace(std::move(e), ca * cb);
                if (!fresh) {
                    it->second += ca * cb;
                    if (it->second == 0)
                        c.erase(it);
                }
            }
        return c;
    };

    VPolynomial out;
    for (const auto& [m, c] : p.terms()) {
        VPolynomial acc;
        acc[std::vector<int>(n, 0)] = 1;
        for (int part : m.parts)
            acc = vmul(acc, sigma(part));
        for (const auto& [e, a] : acc) {
            auto [it, fresh] = out.emplace(e, c * a);
            if (!fresh) {
                it->second += c * a;
                if (it->second == 0)
                    out.erase(it);
            }
        }
    }
    return out;
}

Int content(const ChernPolynomial& p)
{
    Int g = 0;
    for (const auto& [m, c] : p.terms())
        g = gcd(g, c);
    return abs(g);
}

bool is_integral(const ChernPolynomialQ& p)
{
    for (const auto& [m, c] : p.terms())
        if (boost::multiprecision::denominator(c) != 1)
            return false;
    return true;
}

ChernPolynomial to_integral(const ChernPolynomialQ& p)
{
    ChernPolynomial q;
    for (const auto& [m, c] : p.terms()) {
        if (boost::multiprecision::denominator(c) != 1)
            throw std::invalid_argument("to_integral: nonintegral coefficient " + c.str()
                                        + " on " + m.str());
        q.add(m, Int(boost::multiprecision::numerator(c)));
    }
    return q;
}

ChernPolynomialQ to_rational(const ChernPolynomial& p)
{
    ChernPolynomialQ q;
    for (const auto& [m, c] : p.terms())
        q.add(m, Rat(c));
    return q;
}

std::vector<Int> coordinates(const ChernPolynomial& p, const std::vector<ChernMonomial>& basis)
{
    std::vector<Int> v(basis.size(), Int(0));
    for (const auto& [m, c] : p.terms()) {
        auto it = std::find(basis.begin(), basis.end(), m);
        if (it == basis.end())
            throw std::invalid_argument("coordinates: monomial " + m.str() + " not in basis");
        v[static_cast<std::size_t>(it - basis.begin())] = c;
    }
    return v;
}

ChernPolynomial from_coordinates(const std::vector<Int>& v, const std::vector<ChernMonomial>& basis)
{
    if (v.size() != basis.size())
        throw std::invalid_argument("from_coordinates: size mismatch");
    ChernPolynomial p;
    for (std::size_t i = 0; i < v.size(); ++i)
        p.add(basis[i], v[i]);
    return p;
}

template <typename Coeff>
std::string ChernPoly<Coeff>::str() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        std::ostringstream cs;
        cs << c;
        std::string cstr = cs.str();
        if (!first)
            os << (cstr[0] == '-' ? " - " : " + ");
        else if (cstr[0] == '-')
            os << "-";
        std::string mag = cstr[0] == '-' ? cstr.substr(1) : cstr;
        if (m.is_unit())
            os << mag;
        else if (mag == "1")
            os << m.str();
        else
            os << mag << "*" << m.str();
        first = false;
    }
    return os.str();
}

template std::string ChernPoly<Int>::str() const;
template std::string ChernPoly<Rat>::str() const;

std::string chern_poly_json(const ChernPolynomial& p, int n)
{
    std::ostringstream os;
    os << "[";
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        os << (first ? "" : ",") << "{\"exponents\":[";
        auto e = m.exponents(n);
        for (int i = 0; i < n; ++i)
            os << (i ? "," : "") << e[i];
        os << "],\"coeff\":\"" << c.str() << "\"}";
        first = false;
    }
    os << "]";
    return os.str();
}

} // namespace bpu
