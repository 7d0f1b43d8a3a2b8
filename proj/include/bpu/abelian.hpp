#ifndef BPU_ABELIAN_HPP
#define BPU_ABELIAN_HPP

#include <optional>
#include <string>
#include <vector>

#include "bpu/matrix.hpp"

namespace bpu {

/**
 * A finitely generated abelian group presented by generators and relations.
 *
 * The relation matrix has one column per relation, expressed in generator
 * coordinates. Normalization (free rank + invariant factors, each > 1, in a
 * divisibility chain) is computed on construction via the Smith normal form
 * and is the unique canonical form of the presentation.
 */
class FgAbGroup {
public:
    FgAbGroup() : gens_(0) {}
    FgAbGroup(std::size_t generator_count, IntMatrix relation_columns,
              std::vector<std::string> labels = {});

    static FgAbGroup free_group(std::size_t rank, std::vector<std::string> labels = {});
    static FgAbGroup trivial() { return FgAbGroup(); }

    std::size_t generator_count() const { return gens_; }
    const IntMatrix& relation_matrix() const { return relations_; }

    std::size_t free_rank() const { return free_rank_; }
    const std::vector<Int>& invariant_factors() const { return invariant_factors_; }

    bool is_trivial() const { return free_rank_ == 0 && invariant_factors_.empty(); }
    bool is_free() const { return invariant_factors_.empty(); }
    /// Order of the torsion subgroup.
    Int torsion_order() const;

    /// Structural equality of normalized forms (independent of presentation).
    bool same_structure(const FgAbGroup& other) const;

    const std::vector<std::string>& labels() const { return labels_; }
    void set_labels(std::vector<std::string> l) { labels_ = std::move(l); }

    /// "0", "Z", "Z/2", "Z^2 + Z/2 + Z/4", ... deterministic rendering.
    std::string describe() const;

private:
    std::size_t gens_ = 0;
    IntMatrix relations_; // relations as columns
    std::size_t free_rank_ = 0;
    std::vector<Int> invariant_factors_;
    std::vector<std::string> labels_;
};

/**
 * Homomorphism between presented groups. Row i of `matrix` is the image of
 * the i-th domain generator in codomain generator coordinates. Construction
 * checks well-definedness: every domain relation must map into the codomain
 * relation lattice.
 */
class GroupMap {
public:
    GroupMap(FgAbGroup domain, FgAbGroup codomain, IntMatrix matrix);

    static GroupMap zero(FgAbGroup domain, FgAbGroup codomain);

    const FgAbGroup& domain() const { return domain_; }
    const FgAbGroup& codomain() const { return codomain_; }
    const IntMatrix& matrix() const { return matrix_; }

    bool is_zero() const { return matrix_.is_zero(); }

private:
    FgAbGroup domain_, codomain_;
    IntMatrix matrix_; // domain gens x codomain gens
};

/**
 * Basis of the integer kernel of a map between free groups, rows in Hermite
 * normal form with positive leading pivots. The result is saturated: the
 * quotient of the ambient lattice by it is torsion-free.
 */
IntMatrix kernel_lattice(const GroupMap& m);

/// Normalized structure of a presentation.
std::pair<std::size_t, std::vector<Int>> group_structure(const FgAbGroup& g);

enum class Localization { integral, two_local };

/**
 * Subquotient L / I of an ambient ZZ^g, by explicit lattices: L spanned by
 * `cycles` rows, I by `boundary` rows (I must lie in L). The normalized
 * group, canonical generator representatives and membership tests are all
 * recomputed on demand after mutation.
 *
 * Representatives are reduced modulo I so that later ambient coordinates
 * are cleared first; with bases listed in the canonical monomial order this
 * picks the lexicographically least preimage as the printed name.
 */
class LatticeQuotient {
public:
    LatticeQuotient(IntMatrix cycles, IntMatrix boundary_rows);

    std::size_t ambient_dim() const { return ambient_; }
    const IntMatrix& cycles() const { return cycles_; }

    const FgAbGroup& group() const;
    /// One representative per normalized generator, torsion first then free.
    const std::vector<std::vector<Int>>& representatives() const;

    bool contains_cycle(const std::vector<Int>& v) const;
    bool class_is_zero(const std::vector<Int>& v) const;

    /// Quotient further by the class of v (v must lie in the cycle lattice).
    void add_boundary(std::vector<Int> v);
    /// Divide out all odd torsion.
    void drop_odd_torsion();
    /// Collapse to the trivial group.
    void collapse();

private:
    void refresh() const;

    std::size_t ambient_;
    IntMatrix cycles_;
    std::vector<std::vector<Int>> boundaries_;
    mutable bool dirty_ = true;
    mutable FgAbGroup group_;
    mutable std::vector<std::vector<Int>> reps_;
};

/**
 * Homology ker(d_out) / im(d_in) at the middle group. With two_local the
 * odd torsion of the quotient is divided out (representatives stay in the
 * same integral coordinates).
 */
struct HomologyResult {
    FgAbGroup group;
    /// One representative per normalized generator: first the torsion
    /// generators in invariant-factor order, then the free generators.
    std::vector<std::vector<Int>> representatives;
};

HomologyResult homology(const GroupMap& d_in, const GroupMap& d_out,
                        Localization loc = Localization::integral);

/// The cycle/boundary lattices of the same homology, for page bookkeeping.
LatticeQuotient homology_lattices(const GroupMap& d_in, const GroupMap& d_out,
                                  Localization loc = Localization::integral);

/// p-power parts of the invariant factors, entries 1 dropped. p must be prime.
std::vector<Int> p_primary(const FgAbGroup& g, const Int& p);

} // namespace bpu

#endif
