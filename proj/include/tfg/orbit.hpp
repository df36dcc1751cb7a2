#ifndef TFG_ORBIT_HPP
#define TFG_ORBIT_HPP

#include <vector>

#include "tfg/element.hpp"

namespace tfg {

// Finite quotient of a system by cylinders of one level: positions
// 0..modulus-1 on which the base map acts as +1, and an element acting as
// position -> (position + weight[position]) mod modulus.  For an odometer
// element the positions are the depth-D codes and modulus = B_D; welded
// systems reuse the same machinery with modulus = the quotient cycle
// length.  Everything in this module is computed from this data alone.
struct LevelPermutation {
    int64_t modulus = 1;
    std::vector<int64_t> weight;
};

enum class CycleClass { periodic, positive, negative };

// One cycle of the code permutation.  The weight sum S over a cycle is
// always a multiple of the modulus (returning to the start forces it), so
// the multiplier m = S / modulus is an integer, nonzero exactly on
// aperiodic cycles.
struct Cycle {
    std::vector<int64_t> members;  // traversal order, starting at least code
    int64_t sum = 0;
    int64_t multiplier = 0;
    CycleClass cls = CycleClass::periodic;

    int64_t length() const { return static_cast<int64_t>(members.size()); }
};

std::vector<Cycle> decompose_cycles(const LevelPermutation& level);

// Weighted cycle graph of an element at its native depth.
//
// Cylinder-level classification is exact, with no refinement: for x in a
// cycle cylinder the cocycle of h^k along the orbit is a partial-sum walk
// that gains S per loop, so S > 0 forces drift to +infinity for every point
// of every cylinder of the cycle, S < 0 symmetrically, and S = 0 makes
// every point periodic of period exactly the cycle length (a vanishing
// partial sum would close the code cycle early).  This is the finite
// representation of the clopenness of the drift partition; the line oracle
// independently re-checks it on sampled orbits.
struct CycleGraph {
    int64_t depth = 0;
    LevelPermutation level;
    std::vector<Cycle> cycles;
};

CycleGraph cycle_graph(const Element& h);

// The decomposition of the space into the periodic part and the parts of
// forward / backward drift, together with the matching factorization
// h = periodic_factor * positive_factor * negative_factor (disjoint
// supports, so the factors commute).
struct SignPartition {
    ClopenSet periodic_set;
    ClopenSet positive_set;
    ClopenSet negative_set;
    Element periodic_factor;
    Element positive_factor;
    Element negative_factor;
};

SignPartition sign_partition(const Element& h);

// True when the element is positive: no backward-drifting orbit and no
// nontrivial finite orbit.
bool is_positive(const Element& h);

// Partition into fixed-period clopen parts and finitely many clopen sets
// on which the element acts minimally and freely.
struct MinimalPeriodicPartition {
    std::vector<std::pair<int64_t, ClopenSet>> periodic_parts;  // (period n, X_p(n)), n ascending
    std::vector<ClopenSet> components;                          // aperiodic minimal components
    std::vector<int> component_orientation;                     // +1 / -1 per component
    int64_t stabilized_depth = 0;

    int64_t component_count() const { return static_cast<int64_t>(components.size()); }
};

// Aperiodic components are found by refining the cycle graph levelwise: a
// cycle with multiplier m splits at the next level of base b into
// gcd(|m|, b) cycles of multiplier m / gcd(|m|, b), so refinement stops
// once every aperiodic multiplier is coprime to all future bases, at which
// point each cycle is one minimal component.  The splitting rule is forced
// by the first return to a cycle cylinder being g^{m B_D}; the oracle's
// deep_refine_check confirms component assignments by brute refinement.
MinimalPeriodicPartition minimal_periodic_partition(const Element& h, int64_t depth_cap = 64);

struct OrbitNumbers {
    int64_t positive = 0;
    int64_t negative = 0;
};

// Every g-orbit contains exactly `positive` forward-drifting and `negative`
// backward-drifting infinite h-orbits: an aperiodic cycle contributes |m|
// orbits per g-orbit because the first return of h to a cycle cylinder is
// g^{S} with S = m B_D.
OrbitNumbers orbit_numbers(const Element& h);
OrbitNumbers orbit_numbers(const std::vector<Cycle>& cycles);

// The index map: (sum of the exponent table) / B_D.  Checks divisibility
// and agreement with orbit_numbers; failures are internal errors.
int64_t index_of(const Element& h);

struct Rational {
    int64_t num = 0;
    int64_t den = 1;
    bool operator==(const Rational&) const = default;
};

// (1/l) sum_{j=1..l} c_{g,h}(g^{start+j} x0) along the orbit of the zero
// point, whose depth-D cylinder code at time t is t mod B_D.  Exact.
Rational empirical_index(const Element& h, int64_t start, int64_t length);

enum class Orientation { both, forward, backward };

// True iff `a` intersects every aperiodic minimal component of `h` with the
// given orientation (minimality makes every orbit dense in its component,
// so componentwise intersection decides intersection with every orbit).
bool meets_every_infinite_orbit(const Element& h, const ClopenSet& a,
                                Orientation which = Orientation::both);

}  // namespace tfg

#endif
