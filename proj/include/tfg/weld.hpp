#ifndef TFG_WELD_HPP
#define TFG_WELD_HPP

#include <vector>

#include "tfg/orbit.hpp"

namespace tfg {

// One step of a Kakutani program, mapping a cylinder of one system onto a
// cylinder of a (possibly different) system.
struct KakutaniStep {
    enum class Kind { tail_identify, power };
    Kind kind = Kind::tail_identify;
    // tail_identify: from (from_system, from) onto (to_system, to), sending
    // the digit tail across unchanged; requires equal tail base sequences.
    // power: g^t of `to_system` applied within it (from_system unused).
    OdometerSystem from_system;
    Cylinder from;
    OdometerSystem to_system;
    Cylinder to;
    int64_t exponent = 0;  // for power
};

// A conjugacy between first-return maps on cylinders of two odometers,
// represented exactly: every composite of tail identifications and powers
// restricted to a cylinder sends (source digits, tail) to (target digits,
// tail + shift) for one fixed integer shift.  Both first returns act on the
// tail as +1, so the conjugation identity kappa (g1)_{Y1} = (g2)_{Y2} kappa
// holds for every map of this class; validity is checked structurally on
// construction rather than sampled.
class KakutaniMap {
public:
    KakutaniMap(OdometerSystem source_system, Cylinder source, OdometerSystem target_system,
                Cylinder target, int64_t tail_shift, std::vector<KakutaniStep> program);

    const OdometerSystem& source_system() const { return source_system_; }
    const OdometerSystem& target_system() const { return target_system_; }
    Cylinder source() const { return source_; }
    Cylinder target() const { return target_; }
    int64_t tail_shift() const { return tail_shift_; }
    const std::vector<KakutaniStep>& program() const { return program_; }

    KakutaniMap inverse() const;

    // Restriction to the source subcylinder with extra digits `extra`
    // (encoded as a code of the source tail system, `levels` deep).
    KakutaniMap restrict_source(int64_t levels, int64_t extra) const;

    // Restriction whose target subcylinder has extra digits zero.
    KakutaniMap restrict_target_to_zero(int64_t levels) const;

private:
    OdometerSystem source_system_;
    Cylinder source_;
    OdometerSystem target_system_;
    Cylinder target_;
    int64_t tail_shift_ = 0;
    std::vector<KakutaniStep> program_;
};

// The tail identification between two cylinders whose remaining base
// sequences agree; throws tail_mismatch otherwise.
KakutaniMap canonical_equivalence(const OdometerSystem& sys1, Cylinder w1,
                                  const OdometerSystem& sys2, Cylinder w2);

// Composite equivalence: restricts k12 so that its target meets k23's
// source cylinder after a power of the middle system (the exponent is code
// arithmetic at the common depth).
KakutaniMap compose_equivalences(const KakutaniMap& k12, const KakutaniMap& k23);

// The disjoint union of odometer components with a minimal map G welded
// from a Kakutani equivalence.  Cylinders are tagged (component, code) at a
// per-component working depth; G is stored as the induced cylinder
// permutation with tail shifts.  Certificate of minimality at this level:
// the cylinder permutation is one cycle and the shifts around it sum to 1,
// so the first return of G to any cylinder is the tail odometer's +1; both
// facts are re-verified after every refinement.
class WeldedSystem {
public:
    struct Component {
        int tag = 1;
        OdometerSystem system;
        int64_t depth = 0;
    };
    struct TaggedCylinder {
        int tag = 1;
        int64_t code = 0;
        bool operator==(const TaggedCylinder&) const = default;
    };
    struct Arrow {
        TaggedCylinder target;
        int64_t shift = 0;
    };

    const std::vector<Component>& components() const { return components_; }
    int64_t cylinder_count() const { return static_cast<int64_t>(arrows_.size()); }
    const Arrow& arrow(TaggedCylinder c) const { return arrows_[flat_index(c)]; }

    // Cylinders in quotient-cycle order starting from tag 1, code 0.
    const std::vector<TaggedCylinder>& cycle_order() const { return cycle_order_; }
    int64_t position_of(TaggedCylinder c) const { return position_[flat_index(c)]; }

    // One level of refinement for every component; re-verifies the
    // certificate.
    void refine();

    friend WeldedSystem weld(const OdometerSystem&, const OdometerSystem&, const KakutaniMap&,
                             int64_t);
    friend WeldedSystem single_component_weld(const OdometerSystem& sys, int64_t depth);

private:
    std::vector<Component> components_;
    std::vector<Arrow> arrows_;               // indexed by flat cylinder index
    std::vector<TaggedCylinder> cycle_order_; // certificate: single cycle
    std::vector<int64_t> position_;

    std::size_t flat_index(TaggedCylinder c) const;
    void rebuild_certificate();
};

// Welds the two systems along a Kakutani equivalence.  kappa is restricted
// until g_i Y_i is disjoint from Y_i (depth >= 1 suffices); depth_cap
// bounds that restriction and throws overlap_error past it.
WeldedSystem weld(const OdometerSystem& sys1, const OdometerSystem& sys2,
                  const KakutaniMap& kappa, int64_t depth_cap = 64);

// A single odometer presented as a welded system (no equivalence).
WeldedSystem single_component_weld(const OdometerSystem& sys, int64_t depth = 1);

// First return of the welded map to one component, as an element of that
// component's odometer; checked to equal the component generator exactly.
Element induced_on_component(const WeldedSystem& w, int tag);

// Analysis of a piecewise map given per-component elements: expresses it as
// powers of the welded generator per tagged cylinder (solvable exactly
// along the quotient cycle) and runs the cycle analysis with the quotient
// cycle length in place of B_D.
struct WeldAnalysis {
    WeldedSystem system;  // the weld at the depth the table was solved
    std::vector<std::pair<WeldedSystem::TaggedCylinder, int64_t>> table;  // exponents of G
    OrbitNumbers orbits;
    int64_t index = 0;
    int64_t component_count = 0;  // m(h): aperiodic minimal components
    std::vector<Cycle> cycles;    // in quotient-cycle coordinates
};

WeldAnalysis weld_element(WeldedSystem w, std::vector<Element> component_specs,
                          int64_t depth_cap = 64);

}  // namespace tfg

#endif
