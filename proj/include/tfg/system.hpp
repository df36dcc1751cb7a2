#ifndef TFG_SYSTEM_HPP
#define TFG_SYSTEM_HPP

#include <cstdint>
#include <vector>

#include "tfg/errors.hpp"

namespace tfg {

using std::int64_t;

// An odometer ("adding machine") on the Cantor set, described by an
// eventually periodic sequence of digit bases b_1, b_2, ...  Points are
// infinite digit strings d_1 d_2 ... with d_i in [0, b_i); the generator g
// adds 1 at d_1 and carries rightward.  Depth-D prefixes are encoded as
// integers in [0, B_D) with d_1 least significant:
//
//     code = sum_i d_i * B_{i-1},   B_D = b_1 * ... * b_D,   B_0 = 1,
//
// so on depth-D codes g acts as +1 mod B_D and every depth-D quotient is a
// single B_D-cycle.  The eventually periodic description makes "all future
// bases" a finite computable datum, which refinement procedures rely on.
//
// Descriptions are normalized on construction (minimal period, trailing
// preperiod entries absorbed into the period), so equal base sequences
// compare equal structurally.
class OdometerSystem {
public:
    // Default: the dyadic odometer (all bases 2).
    OdometerSystem() : period_{2} {}
    OdometerSystem(std::vector<int64_t> preperiod, std::vector<int64_t> period);

    const std::vector<int64_t>& preperiod() const { return preperiod_; }
    const std::vector<int64_t>& period() const { return period_; }

    // Base b_i at 1-based coordinate i.
    int64_t base_at(int64_t i) const;

    // B_D = b_1 ... b_D.  Throws depth_overflow if the product leaves the
    // range this library can index.
    int64_t level_size(int64_t depth) const;

    // Largest depth whose level still fits in memory-sized tables.
    int64_t max_depth() const;

    // The system seen after discarding the first `depth` coordinates:
    // bases b_{depth+1}, b_{depth+2}, ...  (normalized).
    OdometerSystem tail_from(int64_t depth) const;

    // True when gcd(m, b_i) = 1 for every i > depth.  Decidable because the
    // base sequence is eventually periodic.
    bool coprime_to_future_bases(int64_t depth, int64_t m) const;

    bool operator==(const OdometerSystem& other) const = default;

private:
    std::vector<int64_t> preperiod_;
    std::vector<int64_t> period_;
};

// One cylinder: the clopen set of points with a prescribed depth-D prefix.
struct Cylinder {
    int64_t depth = 0;
    int64_t code = 0;  // in [0, B_depth)

    bool operator==(const Cylinder&) const = default;
};

// Digits d_1..d_D of a code, least significant first.
std::vector<int64_t> code_digits(const OdometerSystem& sys, int64_t depth, int64_t code);
int64_t digits_code(const OdometerSystem& sys, const std::vector<int64_t>& digits);

// A clopen subset of the odometer space, stored as a sorted duplicate-free
// set of codes at one uniform depth.  Canonical form: the depth is reduced
// as far as possible (a reduction by one level is possible exactly when the
// code set is a union of full sibling families).  Equality of canonical
// forms is equality of point sets; storing a single uniform depth gives
// O(log n) membership and trivially canonical equality.
class ClopenSet {
public:
    // The empty set (over the given system).
    explicit ClopenSet(OdometerSystem sys = OdometerSystem())
        : system_(std::move(sys)) {}

    // Canonicalizes; throws code_out_of_range on invalid codes.
    ClopenSet(OdometerSystem sys, int64_t depth, std::vector<int64_t> codes);

    static ClopenSet whole_space(OdometerSystem sys);
    static ClopenSet cylinder(OdometerSystem sys, Cylinder c);

    const OdometerSystem& system() const { return system_; }
    int64_t depth() const { return depth_; }
    const std::vector<int64_t>& codes() const { return codes_; }

    bool is_empty() const { return codes_.empty(); }
    bool is_whole_space() const { return depth_ == 0 && !codes_.empty(); }

    // Codes of this set refined to `depth` >= depth().
    std::vector<int64_t> codes_at(int64_t depth) const;
    bool contains(Cylinder c) const;

    ClopenSet union_with(const ClopenSet& other) const;
    ClopenSet intersect(const ClopenSet& other) const;
    ClopenSet complement() const;
    ClopenSet difference(const ClopenSet& other) const;
    bool subset_of(const ClopenSet& other) const;

    // g^t A: adds t mod B_D to every code.  Exact as a set map because
    // cylinders are cosets w + B_D Z in the profinite completion.
    ClopenSet translate(int64_t t) const;

    // Measure |codes| / B_depth as a reduced fraction (Haar measure).
    std::pair<int64_t, int64_t> measure() const;

    // Image under the reflection r(x) = -1 - x (digitwise complement),
    // which conjugates g to g^{-1}.  Codes map to B_D - 1 - code.
    ClopenSet mirror() const;

    bool operator==(const ClopenSet& other) const = default;

private:
    OdometerSystem system_;
    int64_t depth_ = 0;
    std::vector<int64_t> codes_;

    void canonicalize();
    void check_same_system(const ClopenSet& other) const;
};

}  // namespace tfg

#endif
