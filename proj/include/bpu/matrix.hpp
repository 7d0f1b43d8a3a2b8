#ifndef BPU_MATRIX_HPP
#define BPU_MATRIX_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "bpu/integers.hpp"

namespace bpu {

/**
 * Dense integer matrix with exact arbitrary-precision entries, row-major.
 *
 * This is the computational backbone of the whole artifact: Hermite and
 * Smith normal forms, kernels and lattice comparisons are all built on it.
 */
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, Int(0)) {}
    IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries);

    static IntMatrix identity(std::size_t k);
    /// Build from nested initializer-style data (rows of equal length).
    static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows);
    static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<Int> row(std::size_t i) const;
    void set_row(std::size_t i, const std::vector<Int>& v);

    IntMatrix transposed() const;
    IntMatrix operator*(const IntMatrix& rhs) const;
    bool operator==(const IntMatrix& rhs) const = default;

    bool is_zero() const;
    bool is_square() const { return rows_ == cols_; }

    /// Exact determinant (Bareiss fraction-free elimination); square only.
    Int det() const;

    /// Debug serialization: array of rows, entries as decimal strings.
    std::string to_json_string() const;

private:
    std::size_t rows_, cols_;
    std::vector<Int> a_;
};

/// Result of row-style Hermite reduction: u * a = h, u unimodular.
struct HermiteResult {
    IntMatrix h;
    IntMatrix u;
};

/**
 * Row-style Hermite normal form. Pivots are positive, entries above each
 * pivot are reduced into [0, pivot), and pivot selection takes the smallest
 * nonzero absolute value (ties row-major) so the reduction is deterministic.
 */
HermiteResult hnf(const IntMatrix& a);

/**
 * Smith decomposition u * a * v = s with u, v unimodular and s diagonal,
 * d1 | d2 | ... , nonnegative, trailing zeros last. Same pivot rule as hnf().
 */
struct SmithDecomposition {
    IntMatrix u, s, v;
    /// Diagonal of s, length min(rows, cols).
    std::vector<Int> diagonal() const;
    /// Nonzero diagonal entries.
    std::vector<Int> nonzero_diagonal() const;
};

SmithDecomposition snf(const IntMatrix& a);

/// Invariant factors only (no transforms).
std::vector<Int> invariant_factors(const IntMatrix& a);

/// Canonical basis of the row span: HNF with zero rows dropped.
IntMatrix row_basis(const IntMatrix& rows);

/// Basis (rows, in HNF) of { x : x * m = 0 }. Always saturated.
IntMatrix left_kernel(const IntMatrix& m);

/// True iff v lies in the row span of `basis` (basis need not be in HNF).
bool lattice_contains(const IntMatrix& basis, const std::vector<Int>& v);

/// Solve x * rows = v over the integers; nullopt when unsolvable.
std::optional<std::vector<Int>> solve_in_rows(const IntMatrix& rows, const std::vector<Int>& v);

/// Row spans over ZZ coincide (compares Hermite normal forms).
bool lattice_equal(const IntMatrix& b1, const IntMatrix& b2);

/**
 * Canonical coset representative of v modulo the row span of `rows`:
 * coordinates at pivot columns are reduced into [0, pivot).
 */
std::vector<Int> reduce_mod_lattice(const IntMatrix& rows, std::vector<Int> v);

/**
 * Coset representative that prefers clearing the LAST coordinates first
 * (reduction against the Hermite form taken in reversed column order).
 * Used for canonical homology representatives: with bases listed in the
 * canonical monomial order this selects the lexicographically least name.
 */
std::vector<Int> reduce_mod_lattice_colex(const IntMatrix& rows, std::vector<Int> v);

} // namespace bpu

#endif
