#include "bpu/matrix.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bpu {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries))
{
    if (a_.size() != rows_ * cols_)
        throw std::invalid_argument("IntMatrix: entry count does not match dimensions");
}

IntMatrix IntMatrix::identity(std::size_t k)
{
    IntMatrix m(k, k);
    for (std::size_t i = 0; i < k; ++i)
        m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows)
{
    std::size_t r = rows.size();
    std::size_t c = r ? rows[0].size() : 0;
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c)
            throw std::invalid_argument("IntMatrix::from_rows: ragged rows");
        for (std::size_t j = 0; j < c; ++j)
            m.at(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows)
{
    std::vector<std::vector<Int>> conv;
    conv.reserve(rows.size());
    for (const auto& r : rows)
        conv.emplace_back(r.begin(), r.end());
    return from_rows(conv);
}

std::vector<Int> IntMatrix::row(std::size_t i) const
{
    return std::vector<Int>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
}

void IntMatrix::set_row(std::size_t i, const std::vector<Int>& v)
{
    if (v.size() != cols_)
        throw std::invalid_argument("set_row: wrong length");
    std::copy(v.begin(), v.end(), a_.begin() + i * cols_);
}

IntMatrix IntMatrix::transposed() const
{
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t.at(j, i) = at(i, j);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const
{
    if (cols_ != rhs.rows_)
        throw std::invalid_argument("IntMatrix multiply: shape mismatch");
    IntMatrix p(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& aik = at(i, k);
            if (aik == 0)
                continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                p.at(i, j) += aik * rhs.at(k, j);
        }
    return p;
}

bool IntMatrix::is_zero() const
{
    return std::all_of(a_.begin(), a_.end(), [](const Int& x) { return x == 0; });
}

Int IntMatrix::det() const
{
    if (!is_square())
        throw std::invalid_argument("det: matrix not square");
    std::size_t n = rows_;
    if (n == 0)
        return 1;
    IntMatrix a = *this;
    int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            std::size_t sw = k + 1;
            while (sw < n && a.at(sw, k) == 0)
                ++sw;
            if (sw == n)
                return 0;
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a.at(k, j), a.at(sw, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
            a.at(i, k) = 0;
        }
        prev = a.at(k, k);
    }
    return sign * a.at(n - 1, n - 1);
}

std::string IntMatrix::to_json_string() const
{
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? "," : "") << "[";
        for (std::size_t j = 0; j < cols_; ++j)
            os << (j ? "," : "") << "\"" << at(i, j).str() << "\"";
        os << "]";
    }
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------------------
// Hermite normal form
// ---------------------------------------------------------------------------

HermiteResult hnf(const IntMatrix& a)
{
    IntMatrix h = a;
    std::size_t m = h.rows(), n = h.cols();
    IntMatrix u = IntMatrix::identity(m);

    auto row_sub = [&](std::size_t i, std::size_t k, const Int& q) {
        for (std::size_t j = 0; j < n; ++j)
            h.at(i, j) -= q * h.at(k, j);
        for (std::size_t j = 0; j < m; ++j)
            u.at(i, j) -= q * u.at(k, j);
    };
    auto row_swap = [&](std::size_t i, std::size_t k) {
        for (std::size_t j = 0; j < n; ++j)
            std::swap(h.at(i, j), h.at(k, j));
        for (std::size_t j = 0; j < m; ++j)
            std::swap(u.at(i, j), u.at(k, j));
    };
    auto row_negate = [&](std::size_t i) {
        for (std::size_t j = 0; j < n; ++j)
            h.at(i, j) = -h.at(i, j);
        for (std::size_t j = 0; j < m; ++j)
            u.at(i, j) = -u.at(i, j);
    };

    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        // pivot: smallest nonzero absolute value among rows >= r, ties row-major
        auto pick = [&]() -> std::ptrdiff_t {
            std::ptrdiff_t piv = -1;
            Int best;
            for (std::size_t i = r; i < m; ++i) {
                if (h.at(i, c) == 0)
                    continue;
                Int v = abs(h.at(i, c));
                if (piv < 0 || v < best) {
                    best = v;
                    piv = static_cast<std::ptrdiff_t>(i);
                }
            }
            return piv;
        };
        std::ptrdiff_t piv = pick();
        if (piv < 0)
            continue;
        while (true) {
            if (static_cast<std::size_t>(piv) != r)
                row_swap(r, static_cast<std::size_t>(piv));
            bool clean = true;
            for (std::size_t i = r + 1; i < m; ++i) {
                if (h.at(i, c) == 0)
                    continue;
                Int q = floor_div(h.at(i, c), h.at(r, c));
                if (q != 0)
                    row_sub(i, r, q);
                if (h.at(i, c) != 0)
                    clean = false;
            }
            if (clean)
                break;
            piv = pick();
        }
        if (h.at(r, c) < 0)
            row_negate(r);
        for (std::size_t i = 0; i < r; ++i) {
            Int q = floor_div(h.at(i, c), h.at(r, c));
            if (q != 0)
                row_sub(i, r, q);
        }
        ++r;
    }
    return {std::move(h), std::move(u)};
}

// ---------------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------------

std::vector<Int> SmithDecomposition::diagonal() const
{
    std::vector<Int> d;
    std::size_t k = std::min(s.rows(), s.cols());
    d.reserve(k);
    for (std::size_t i = 0; i < k; ++i)
        d.push_back(s.at(i, i));
    return d;
}

std::vector<Int> SmithDecomposition::nonzero_diagonal() const
{
    std::vector<Int> d;
    for (const Int& x : diagonal())
        if (x != 0)
            d.push_back(x);
    return d;
}

SmithDecomposition snf(const IntMatrix& a)
{
    IntMatrix s = a;
    std::size_t m = s.rows(), n = s.cols();
    IntMatrix u = IntMatrix::identity(m);
    IntMatrix v = IntMatrix::identity(n);

    auto row_sub = [&](std::size_t i, std::size_t k, const Int& q) {
        for (std::size_t j = 0; j < n; ++j)
            s.at(i, j) -= q * s.at(k, j);
        for (std::size_t j = 0; j < m; ++j)
            u.at(i, j) -= q * u.at(k, j);
    };
    auto col_sub = [&](std::size_t j, std::size_t k, const Int& q) {
        for (std::size_t i = 0; i < m; ++i)
            s.at(i, j) -= q * s.at(i, k);
        for (std::size_t i = 0; i < n; ++i)
            v.at(i, j) -= q * v.at(i, k);
    };
    auto row_swap = [&](std::size_t i, std::size_t k) {
        for (std::size_t j = 0; j < n; ++j)
            std::swap(s.at(i, j), s.at(k, j));
        for (std::size_t j = 0; j < m; ++j)
            std::swap(u.at(i, j), u.at(k, j));
    };
    auto col_swap = [&](std::size_t j, std::size_t k) {
        for (std::size_t i = 0; i < m; ++i)
            std::swap(s.at(i, j), s.at(i, k));
        for (std::size_t i = 0; i < n; ++i)
            std::swap(v.at(i, j), v.at(i, k));
    };

    std::size_t t = 0;
    while (t < std::min(m, n)) {
        // global pivot over the remaining block, smallest |value|, ties row-major
        std::ptrdiff_t pi = -1, pj = -1;
        Int best;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j) {
                if (s.at(i, j) == 0)
                    continue;
                Int w = abs(s.at(i, j));
                if (pi < 0 || w < best) {
                    best = w;
                    pi = static_cast<std::ptrdiff_t>(i);
                    pj = static_cast<std::ptrdiff_t>(j);
                }
            }
        if (pi < 0)
            break; // block is zero
        if (static_cast<std::size_t>(pi) != t)
            row_swap(t, static_cast<std::size_t>(pi));
        if (static_cast<std::size_t>(pj) != t)
            col_swap(t, static_cast<std::size_t>(pj));

        bool clean = true;
        for (std::size_t i = t + 1; i < m; ++i) {
            if (s.at(i, t) == 0)
                continue;
            Int q = floor_div(s.at(i, t), s.at(t, t));
            if (q != 0)
                row_sub(i, t, q);
            if (s.at(i, t) != 0)
                clean = false;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
            if (s.at(t, j) == 0)
                continue;
            Int q = floor_div(s.at(t, j), s.at(t, t));
            if (q != 0)
                col_sub(j, t, q);
            if (s.at(t, j) != 0)
                clean = false;
        }
        if (!clean)
            continue;

        // pivot must divide every remaining entry; if not, mix the offending
        // row in and restart this position with a strictly smaller pivot
        const Int p = s.at(t, t);
        std::ptrdiff_t bad = -1;
        for (std::size_t i = t + 1; i < m && bad < 0; ++i)
            for (std::size_t j = t + 1; j < n; ++j)
                if (s.at(i, j) % p != 0) {
                    bad = static_cast<std::ptrdiff_t>(i);
                    break;
                }
        if (bad >= 0) {
            row_sub(t, static_cast<std::size_t>(bad), Int(-1));
            continue;
        }
        if (s.at(t, t) < 0) {
            for (std::size_t j = 0; j < n; ++j)
                s.at(t, j) = -s.at(t, j);
            for (std::size_t j = 0; j < m; ++j)
                u.at(t, j) = -u.at(t, j);
        }
        ++t;
    }
    return {std::move(u), std::move(s), std::move(v)};
}

std::vector<Int> invariant_factors(const IntMatrix& a)
{
    return snf(a).nonzero_diagonal();
}

IntMatrix row_basis(const IntMatrix& rows)
{
    HermiteResult hr = hnf(rows);
    std::vector<std::vector<Int>> keep;
    for (std::size_t i = 0; i < hr.h.rows(); ++i) {
        auto r = hr.h.row(i);
        if (std::any_of(r.begin(), r.end(), [](const Int& x) { return x != 0; }))
            keep.push_back(std::move(r));
    }
    if (keep.empty())
        return IntMatrix(0, rows.cols());
    return IntMatrix::from_rows(keep);
}

IntMatrix left_kernel(const IntMatrix& m)
{
    // u * m = h; rows of u opposite zero rows of h span the left kernel,
    // and u unimodular makes the result saturated.
    HermiteResult hr = hnf(m);
    std::vector<std::vector<Int>> ker;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto r = hr.h.row(i);
        if (std::all_of(r.begin(), r.end(), [](const Int& x) { return x == 0; }))
            ker.push_back(hr.u.row(i));
    }
    if (ker.empty())
        return IntMatrix(0, m.rows());
    return row_basis(IntMatrix::from_rows(ker));
}

bool lattice_contains(const IntMatrix& basis, const std::vector<Int>& v)
{
    return solve_in_rows(basis, v).has_value();
}

std::optional<std::vector<Int>> solve_in_rows(const IntMatrix& rows, const std::vector<Int>& v)
{
    std::size_t m = rows.rows(), n = rows.cols();
    if (v.size() != n)
        throw std::invalid_argument("solve_in_rows: length mismatch");
    if (m == 0) {
        for (const Int& x : v)
            if (x != 0)
                return std::nullopt;
        return std::vector<Int>{};
    }
    HermiteResult hr = hnf(rows);
    std::vector<Int> w = v;
    std::vector<Int> coef(m, Int(0));
    for (std::size_t r = 0; r < m; ++r) {
        std::ptrdiff_t piv = -1;
        for (std::size_t j = 0; j < n; ++j)
            if (hr.h.at(r, j) != 0) {
                piv = static_cast<std::ptrdiff_t>(j);
                break;
            }
        if (piv < 0)
            continue;
        const Int& p = hr.h.at(r, static_cast<std::size_t>(piv));
        if (w[static_cast<std::size_t>(piv)] % p != 0)
            return std::nullopt;
        Int q = w[static_cast<std::size_t>(piv)] / p;
        if (q != 0) {
            for (std::size_t j = 0; j < n; ++j)
                w[j] -= q * hr.h.at(r, j);
            for (std::size_t j = 0; j < m; ++j)
                coef[j] += q * hr.u.at(r, j);
        }
    }
    for (const Int& x : w)
        if (x != 0)
            return std::nullopt;
    return coef;
}

bool lattice_equal(const IntMatrix& b1, const IntMatrix& b2)
{
    if (b1.cols() != b2.cols())
        throw std::invalid_argument("lattice_equal: ambient dimensions differ");
    return row_basis(b1) == row_basis(b2);
}

std::vector<Int> reduce_mod_lattice(const IntMatrix& rows, std::vector<Int> v)
{
    IntMatrix h = row_basis(rows);
    std::size_t n = v.size();
    for (std::size_t r = 0; r < h.rows(); ++r) {
        std::ptrdiff_t piv = -1;
        for (std::size_t j = 0; j < n; ++j)
            if (h.at(r, j) != 0) {
                piv = static_cast<std::ptrdiff_t>(j);
                break;
            }
        if (piv < 0)
            continue;
        Int q = floor_div(v[static_cast<std::size_t>(piv)], h.at(r, static_cast<std::size_t>(piv)));
        if (q != 0)
            for (std::size_t j = 0; j < n; ++j)
                v[j] -= q * h.at(r, j);
    }
    return v;
}

std::vector<Int> reduce_mod_lattice_colex(const IntMatrix& rows, std::vector<Int> v)
{
    if (rows.rows() == 0)
        return v;
    std::size_t n = v.size();
    IntMatrix rev(rows.rows(), n);
    for (std::size_t i = 0; i < rows.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j)
            rev.at(i, j) = rows.at(i, n - 1 - j);
    std::vector<Int> w(n);
    for (std::size_t j = 0; j < n; ++j)
        w[j] = v[n - 1 - j];
    w = reduce_mod_lattice(rev, std::move(w));
    std::vector<Int> out(n);
    for (std::size_t j = 0; j < n; ++j)
        out[j] = w[n - 1 - j];
    return out;
}

} // namespace bpu
