#ifndef BPU_RULES_HPP
#define BPU_RULES_HPP

#include <string>
#include <vector>

#include "bpu/integers.hpp"

namespace bpu {

/**
 * One externally proved higher-differential fact, shipped as data so the
 * provenance of every non-computable step stays auditable.
 *
 * Record kinds, distinguished by `page`:
 *  - page >= 4: the differential d_page out of (s, t) sends source_label to
 *    coeff_formula(n) * target_label in the entry (s+page, t-page+1); a
 *    coefficient evaluating to zero records a proved vanishing.
 *  - page == 0 with nonempty source_label: permanence of that class at
 *    (s, t) - no differential into or out of the entry is nonzero on it.
 *  - page == 0 with source_label "*" and s == 0: the whole left column
 *    degenerates, no outgoing differentials from (0, *) on pages >= 4.
 */
struct DifferentialRule {
    int page = 0;
    int s = 0;
    int t = 0;
    std::string n_condition; // "all", "even", "odd", "n % 4 == 0", "n >= 4", "&&"-conjunction
    std::string source_label;
    std::string coeff_formula; // integer expression in n; binom(a,b) allowed
    std::string target_label;
    std::string citation;

    bool is_differential() const { return page >= 4; }
    bool is_permanence() const { return page == 0 && source_label != "*"; }
    bool is_column_degeneration() const { return page == 0 && source_label == "*"; }
    /// Target bidegree (s+page, t-page+1) per the Serre pattern.
    std::pair<int, int> target_bidegree() const { return {s + page, t - page + 1}; }
};

/// Evaluate a rule condition at n; throws std::invalid_argument on bad syntax.
bool condition_holds(const std::string& condition, int n);

/// Evaluate an integer coefficient formula at n.
Int eval_coeff_formula(const std::string& formula, int n);

class RuleTable {
public:
    RuleTable() = default;
    explicit RuleTable(std::vector<DifferentialRule> rules);

    /// The table shipped with the library (identical to data/rules.json).
    static RuleTable builtin();
    static RuleTable from_json(const std::string& text);
    static RuleTable load_file(const std::string& path);

    /// Canonical serialization; load/dump round-trips byte-exactly.
    std::string to_json() const;

    const std::vector<DifferentialRule>& rules() const { return rules_; }

    std::vector<const DifferentialRule*> differentials_at_page(int page, int n) const;
    std::vector<const DifferentialRule*> permanence_at(int s, int t, int n) const;
    bool has_column_degeneration() const;

    /// Structural validation: bidegrees, parsable conditions and formulas.
    void validate() const;

private:
    std::vector<DifferentialRule> rules_;
};

} // namespace bpu

#endif
