#ifndef TFG_POSITIVE_HPP
#define TFG_POSITIVE_HPP

#include <optional>

#include "tfg/orbit.hpp"

namespace tfg {

// The strongly positive domain of a positive element: the points whose
// whole forward cocycle stays nonnegative.  Computed per cycle: a code
// belongs iff every partial sum along one full loop from it is >= 0 (drift
// makes further loops only larger).  Orientation::backward delegates to the
// forward path through the mirror (g^{-1} is the reflected odometer).
// Throws not_positive when the element is not positive.
ClopenSet strongly_positive_domain(const Element& h, Orientation which = Orientation::forward);

// The unique strongly positive element with the same infinite orbits as h
// that fixes every h-periodic point: on each aperiodic cylinder the
// exponent is the least positive cocycle value over the whole orbit, i.e.
// the strict successor in the g-order.  (The non-strict reading of the
// defining inequality would return the identity; the proofs use the strict
// successor, and so does this implementation.)
Element positive_form(const Element& h);

// The canonical strongly positive conjugator k with h = k h' k^{-1} for
// h' = positive_form(h), whose fixed points meet every minimal component.
// Computed from delta(w, t) = c_{g,h^t} - c_{g,h'^t} over a growing window;
// the window doubles until the conjugation identity verifies exactly
// (delta is bounded, so this terminates).  Throws not_positive.
Element canonical_conjugator(const Element& h);

// h = periodic_factor
//     * (positive_conjugator * positive_core * positive_conjugator^{-1})
//     * (negative_conjugator * negative_core * negative_conjugator^{-1}),
// with positive_core, positive_conjugator strongly positive and
// negative_core, negative_conjugator strongly negative.  The negative pair
// is the mirror image of the positive construction applied to the mirrored
// negative factor.
struct StrongSignForm {
    Element periodic_factor;
    Element positive_core;
    Element positive_conjugator;
    Element negative_core;
    Element negative_conjugator;

    Element reconstruct() const;
};

StrongSignForm strong_sign_form(const Element& h);

// Is h conjugate to g or to g^{-1} inside the full group?  Equivalent to
// the orbits of h being exactly the g-orbits; decided via positive_form and
// witnessed by the canonical conjugator.
struct GeneratorConjugacy {
    enum class Kind { conjugate_of_g, conjugate_of_g_inverse, neither };
    Kind kind = Kind::neither;
    std::optional<Element> conjugator;
};

GeneratorConjugacy generator_conjugacy(const Element& h);

}  // namespace tfg

#endif
