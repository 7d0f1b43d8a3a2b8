#ifndef BPU_PAGE_HPP
#define BPU_PAGE_HPP

#include <optional>
#include <string>
#include <vector>

#include "bpu/abelian.hpp"
#include "bpu/chern.hpp"
#include "bpu/kz3.hpp"
#include "bpu/rules.hpp"

namespace bpu {

/// Basis label of an E2 = E3 entry: base-class monomial times Chern monomial.
struct PageLabel {
    ChernMonomial chern;
    kz3::Monomial base;

    std::string str() const;
    bool operator==(const PageLabel&) const = default;
};

/**
 * One entry of the spectral sequence.
 *
 * basis_labels always refer to the E3 presentation; for pages above 3 the
 * group's label strings name canonical representatives in that basis.
 */
struct PageEntry {
    int n = 0;
    int s = 0;
    int t = 0;
    int page = 3;
    FgAbGroup group;
    std::vector<PageLabel> basis_labels;

    std::string to_json() const;
};

/**
 * E3 = E2: the degree-s component of the base ring tensored with the free
 * module on the weight-t/2 Chern basis; labels in product order (Chern
 * major, base-class minor). With two_local, odd-torsion labels are dropped
 * and annihilators replaced by their 2-parts (s > 0 entries only change).
 */
PageEntry e3_entry(int n, int s, int t, Localization loc = Localization::integral);

/**
 * The page-3 differential as a map of presented groups. On a basis label
 * (w, xi) the image is divergence(w) * (x1 * xi), expanded over the target
 * labels. Entries outside the window count as the zero group.
 */
GroupMap d3(int n, int s, int t, Localization loc = Localization::integral);

/// d3 in matrix form: rows = source labels, columns = target labels.
IntMatrix d3_matrix(int n, int s, int t);

/**
 * E4 entry: homology of the d3 complex through (s,t); canonical lift labels.
 * Column 0 is computed integrally (it is the Weyl-invariant ring and stays
 * torsion-free); entries with s > 0 are 2-localized, matching the range in
 * which the higher differential facts are proved.
 */
PageEntry e4_entry(int n, int s, int t);

/**
 * Stable value of the entry. Starts from E4 and walks pages 4..15, applying
 * the rule table; a page with no applicable rule passes through only when
 * the potential differential is impossible for a reason the computation can
 * certify (zero source/target, left-column degeneration, permanence).
 * Anything else throws: the table does not determine the entry.
 *
 * 2-localized for s > 0; defined for s+t <= 14 and for the (15,0) entry.
 */
PageEntry einf_entry(int n, int s, int t, const RuleTable& rules = RuleTable::builtin());

enum class SplitVerdict { split_by_free_top, unambiguous_single_entry, extension_ambiguous };

std::string to_string(SplitVerdict v);

/**
 * Torsion of the total-degree-s cohomology, s in {12,13,14}, assembled from
 * the stable antidiagonal entries. The degree-12 report adjoins the
 * 5-primary summand Z/gcd(5,n), which enters through odd-primary input
 * rather than the 2-localized pages. Odd n short-circuits: every entry off
 * the Weyl-invariant column is then torsion prime to n in this range.
 */
struct AssemblyReport {
    int n = 0;
    int degree = 0;
    struct EntrySummary {
        int s, t;
        FgAbGroup group;
    };
    std::vector<EntrySummary> entries; // stable values, s > 0, antidiagonal order
    std::size_t free_top_rank = 0;     // rank of the (0, degree) entry
    SplitVerdict verdict = SplitVerdict::split_by_free_top;
    FgAbGroup torsion;
    /// Present only for extension-ambiguous: associated graded and the
    /// largest-possible (cyclic) extension.
    std::optional<std::pair<FgAbGroup, FgAbGroup>> torsion_bounds;

    std::string to_json() const;
};

AssemblyReport torsion_of_H(int n, int s, const RuleTable& rules = RuleTable::builtin());

} // namespace bpu

#endif
