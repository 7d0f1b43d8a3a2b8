// Test-side oracles, independent of the implementation paths they check.
#ifndef BPU_TESTS_ORACLES_HPP
#define BPU_TESTS_ORACLES_HPP

#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include "bpu/chern.hpp"
#include "bpu/matrix.hpp"

namespace bpu::testing {

/// Number of partitions of w into parts <= maxpart (plain recursion).
inline long partition_count(int w, int maxpart)
{
    if (w == 0)
        return 1;
    if (maxpart < 1)
        return 0;
    long total = 0;
    for (int p = std::min(w, maxpart); p >= 1; --p)
        total += partition_count(w - p, p);
    return total;
}

inline VPolynomial v_sub(VPolynomial a, const VPolynomial& b)
{
    for (const auto& [e, c] : b) {
        auto [it, fresh] = a.emplace(e, -c);
        if (!fresh) {
            it->second -= c;
            if (it->second == 0)
                a.erase(it);
        }
    }
    return a;
}

/// Sum of partial derivatives d/dv_i, computed term by term.
inline VPolynomial v_total_derivative(const VPolynomial& p)
{
    VPolynomial out;
    for (const auto& [e, c] : p) {
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0)
                continue;
            std::vector<int> f = e;
            f[i] -= 1;
            Int coeff = c * e[i];
            auto [it, fresh] = out.emplace(std::move(f), coeff);
            if (!fresh) {
                it->second += coeff;
                if (it->second == 0)
                    out.erase(it);
            }
        }
    }
    return out;
}

/**
 * Rewrite a symmetric polynomial in v_1..v_n in the elementary symmetric
 * generators by iterated leading-term subtraction: the lex-leading exponent
 * (a_1 >= ... >= a_n) is cancelled by c_1^{a_1-a_2} c_2^{a_2-a_3} ... c_n^{a_n}.
 */
inline ChernPolynomial symmetrize_to_chern(VPolynomial f, int n)
{
    ChernPolynomial out;
    while (!f.empty()) {
        auto lead = std::prev(f.end()); // std::map is lex-ordered; last = leading
        const std::vector<int>& a = lead->first;
        Int c = lead->second;
        std::vector<int> parts;
        for (int i = 0; i < n; ++i) {
            int k = a[static_cast<std::size_t>(i)] - (i + 1 < n ? a[static_cast<std::size_t>(i) + 1] : 0);
            if (k < 0)
                throw std::logic_error("symmetrize_to_chern: input is not symmetric");
            for (int r = 0; r < k; ++r)
                parts.push_back(i + 1);
        }
        ChernMonomial m(std::move(parts));
        out.add(m, c);
        VPolynomial expanded = expand_in_v(ChernPolynomial::monomial(m, c), n);
        f = v_sub(std::move(f), expanded);
    }
    return out;
}

/// Divergence through the torus picture: expand, apply sum of d/dv_i, re-collect.
inline ChernPolynomial divergence_via_torus(const ChernPolynomial& p, int n)
{
    return symmetrize_to_chern(v_total_derivative(expand_in_v(p, n)), n);
}

/// Deterministic random matrix with entries in [-bound, bound].
inline IntMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int bound)
{
    std::uniform_int_distribution<int> dist(-bound, bound);
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m.at(i, j) = dist(rng);
    return m;
}

/// Random unimodular matrix: a product of elementary row operations.
inline IntMatrix random_unimodular(std::mt19937& rng, std::size_t k, int ops)
{
    IntMatrix u = IntMatrix::identity(k);
    if (k < 2)
        return u;
    std::uniform_int_distribution<std::size_t> pick(0, k - 1);
    std::uniform_int_distribution<int> scale(-3, 3);
    for (int o = 0; o < ops; ++o) {
        std::size_t i = pick(rng), j = pick(rng);
        if (i == j)
            continue;
        int q = scale(rng);
        for (std::size_t c = 0; c < k; ++c)
            u.at(i, c) += q * u.at(j, c);
    }
    return u;
}

} // namespace bpu::testing

#endif
