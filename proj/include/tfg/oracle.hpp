#ifndef TFG_ORACLE_HPP
#define TFG_ORACLE_HPP

#include <string>
#include <vector>

#include "tfg/element.hpp"

namespace tfg {

// Brute-force verification on the integer line, the g-orbit of the zero
// point: the cylinder of g^t x0 at depth D has code t mod B_D, so h moves
// the integer t to t + n_{t mod B_D}.  Nothing here touches the cycle
// machinery; tests compare the two routes.
struct OrbitStats {
    int64_t window = 0;  // points t in [-window, window]

    // Per point (index t + window): id of its traced orbit.
    std::vector<int64_t> orbit_id;

    struct Orbit {
        int64_t id = 0;
        int64_t size = 0;        // points of the trace inside the window
        int64_t period = 0;      // > 0 when the orbit is finite
        int drift = 0;           // +1 / -1 for infinite orbits, 0 for finite
        bool crosses_center = false;  // contains t1 < 0 <= t2
        bool touches_boundary = false;
        int64_t least_point = 0;
    };
    std::vector<Orbit> orbits;

    // Distinct infinite orbits crossing the center, per drift direction.
    // For a wide enough window these equal the orbit numbers: the line
    // carries exactly o+ + o- infinite orbits, each of which steps across
    // the center in jumps of at most |h|_g.
    int64_t crossing_positive = 0;
    int64_t crossing_negative = 0;

    // (1/(2N+1)) sum of the cocycle over the window, as a reduced fraction.
    int64_t cocycle_sum = 0;

    const Orbit& orbit_of(int64_t t) const {
        return orbits[static_cast<std::size_t>(orbit_id[static_cast<std::size_t>(t + window)])];
    }
};

// Requires window >= B_D.
OrbitStats simulate_line(const Element& h, int64_t window);

// Recomputes the cycle decomposition `extra` levels below the stabilized
// minimal-component depth and checks the gcd-splitting rule against it:
// every refined cycle must fall inside exactly one stabilized part, each
// aperiodic component must still consist of a single cycle, and multipliers
// and classifications must persist.
struct RefineReport {
    bool consistent = true;
    int64_t base_depth = 0;
    int64_t checked_depth = 0;
    std::vector<std::string> violations;
};

RefineReport deep_refine_check(const Element& h, int64_t extra);

}  // namespace tfg

#endif
