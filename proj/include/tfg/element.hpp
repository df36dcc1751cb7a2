#ifndef TFG_ELEMENT_HPP
#define TFG_ELEMENT_HPP

#include <vector>

#include "tfg/system.hpp"

namespace tfg {

// An element h of the topological full group of the odometer g, stored as a
// total map from depth-D codes to integer exponents: h acts on the cylinder
// with code w as g^{n_w}.  The table is exactly the cocycle of h with
// respect to g, which is locally constant and therefore constant on deep
// enough cylinders.
//
// Why this representation is closed and complete: g^n maps each depth-D
// cylinder bijectively onto the cylinder with code (w + n) mod B_D, so a
// table defines a homeomorphism precisely when w -> (w + n_w) mod B_D
// permutes Z/B_D; conversely any homeomorphism acting locally by powers of
// g has a constant exponent on each cylinder at the depth where its cocycle
// stabilizes.  Every group operation below stays within this class without
// ever increasing depth beyond the operands' common depth.
//
// Canonical form: the depth is reduced while all siblings of every parent
// share one exponent.  Equality of elements is equality of canonical forms.
class Element {
public:
    // The identity over the given system.
    explicit Element(OdometerSystem sys = OdometerSystem());

    // Validates and canonicalizes a raw table (size must be B_depth).
    // Throws not_bijective with a witness pair when the induced code map
    // collides, code_out_of_range on a malformed table.
    Element(OdometerSystem sys, int64_t depth, std::vector<int64_t> table);

    // g^t as an element (canonical depth 0).
    static Element generator_power(OdometerSystem sys, int64_t t);

    const OdometerSystem& system() const { return system_; }
    int64_t depth() const { return depth_; }
    const std::vector<int64_t>& table() const { return table_; }

    bool is_identity() const { return depth_ == 0 && table_[0] == 0; }
    bool is_strongly_positive() const;  // all exponents >= 0
    bool is_strongly_negative() const;  // all exponents <= 0

    // |h|_g: the largest absolute exponent.
    int64_t norm() const;

    // Exponent on the cylinder containing `code` at `depth` >= depth().
    int64_t exponent_at(int64_t depth, int64_t code) const;

    // Table refined to `depth` >= depth() (extension by periodicity mod B_D).
    std::vector<int64_t> table_at(int64_t depth) const;

    Element compose(const Element& rhs) const;  // this after rhs: (a.compose(b))(x) = a(b(x))
    Element inverse() const;
    Element power(int64_t t) const;

    // Conjugation this * h * this^{-1}.
    Element conjugate(const Element& h) const;

    // Image of a clopen set (exact: each cylinder moves by its exponent).
    ClopenSet apply(const ClopenSet& a) const;

    // Cylinders with nonzero exponent, as a canonical clopen set.
    ClopenSet support() const;

    // h with exponents zeroed outside `a` (join of h|_a with the identity).
    // Requires h to map a into itself at the common depth.
    Element restrict_to(const ClopenSet& a) const;

    // The reflection conjugate r h r^{-1}, where r(x) = -1 - x in profinite
    // arithmetic (digitwise d_i -> b_i - 1 - d_i).  r conjugates g to g^{-1},
    // so the mirror exchanges positive and negative notions; every "-"
    // oriented computation delegates to the "+" path through it.
    Element mirror() const;

    bool operator==(const Element& other) const = default;

private:
    OdometerSystem system_;
    int64_t depth_ = 0;
    std::vector<int64_t> table_;

    void validate_and_canonicalize();
};

// First-return map of g to a clopen set, joined with the identity off it:
// for a code w in A the exponent is the least t > 0 with (w + t) mod B_D in
// A.  Always strongly positive.  Throws empty_set_error on the empty set.
Element induced_generator(const ClopenSet& a);

// First-return map of an arbitrary element h to a clopen set, joined with
// the identity: follow the code permutation until it re-enters A (return
// time is at most B_D since the code map is a permutation) and sum the
// exponents along the way.
Element induced_element(const Element& h, const ClopenSet& a);

// True iff the cocycle of a is pointwise <= the cocycle of b; equivalently
// b compose a^{-1} is strongly positive.
bool dominates(const Element& a, const Element& b);

// Common refinement depth for binary operations.
int64_t common_depth(const Element& a, const Element& b);

}  // namespace tfg

#endif
