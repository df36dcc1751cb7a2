#include "tfg/orbit.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace tfg {

namespace {

int64_t floor_mod(int64_t a, int64_t m) {
    int64_t r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

std::vector<Cycle> decompose_cycles(const LevelPermutation& level) {
    int64_t n = level.modulus;
    ensure(static_cast<int64_t>(level.weight.size()) == n, "level permutation table size mismatch");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::vector<Cycle> cycles;
    for (int64_t start = 0; start < n; ++start) {
        if (seen[static_cast<std::size_t>(start)]) continue;
        Cycle c;
        __int128 sum = 0;
        int64_t pos = start;
        do {
            seen[static_cast<std::size_t>(pos)] = true;
            c.members.push_back(pos);
            sum += level.weight[static_cast<std::size_t>(pos)];
            pos = floor_mod(pos + level.weight[static_cast<std::size_t>(pos)], n);
        } while (pos != start);
        ensure(sum % n == 0, "cycle weight sum not divisible by the modulus");
        c.sum = static_cast<int64_t>(sum);
        c.multiplier = static_cast<int64_t>(sum / n);
        c.cls = c.sum == 0   ? CycleClass::periodic
                : c.sum > 0 ? CycleClass::positive
                            : CycleClass::negative;
        cycles.push_back(std::move(c));
    }
    return cycles;
}

CycleGraph cycle_graph(const Element& h) {
    CycleGraph g;
    g.depth = h.depth();
    g.level.modulus = h.system().level_size(h.depth());
    g.level.weight = h.table();
    g.cycles = decompose_cycles(g.level);
    return g;
}

SignPartition sign_partition(const Element& h) {
    CycleGraph g = cycle_graph(h);
    std::vector<int64_t> periodic, positive, negative;
    for (const Cycle& c : g.cycles) {
        std::vector<int64_t>& bucket = c.cls == CycleClass::periodic ? periodic
                                       : c.cls == CycleClass::positive ? positive
                                                                        : negative;
        bucket.insert(bucket.end(), c.members.begin(), c.members.end());
    }
    const OdometerSystem& sys = h.system();
    SignPartition p{ClopenSet(sys, g.depth, periodic), ClopenSet(sys, g.depth, positive),
                    ClopenSet(sys, g.depth, negative), Element(sys), Element(sys), Element(sys)};
    auto factor = [&](const std::vector<int64_t>& codes) {
        std::vector<int64_t> table(static_cast<std::size_t>(g.level.modulus), 0);
        for (int64_t w : codes) table[static_cast<std::size_t>(w)] = g.level.weight[static_cast<std::size_t>(w)];
        return Element(sys, g.depth, std::move(table));
    };
    p.periodic_factor = factor(periodic);
    p.positive_factor = factor(positive);
    p.negative_factor = factor(negative);
    return p;
}

bool is_positive(const Element& h) {
    for (const Cycle& c : cycle_graph(h).cycles) {
        if (c.cls == CycleClass::negative) return false;
        if (c.cls == CycleClass::periodic && c.length() > 1) return false;
    }
    return true;
}

MinimalPeriodicPartition minimal_periodic_partition(const Element& h, int64_t depth_cap) {
    const OdometerSystem& sys = h.system();
    MinimalPeriodicPartition out;

    // Periodic parts are exact at native depth and stable under refinement
    // (a zero-sum cycle splits into zero-sum cycles of the same length).
    CycleGraph native = cycle_graph(h);
    std::vector<std::pair<int64_t, std::vector<int64_t>>> by_period;
    for (const Cycle& c : native.cycles) {
        if (c.cls != CycleClass::periodic) continue;
        auto it = std::find_if(by_period.begin(), by_period.end(),
                               [&](const auto& e) { return e.first == c.length(); });
        if (it == by_period.end()) {
            by_period.emplace_back(c.length(), c.members);
        } else {
            it->second.insert(it->second.end(), c.members.begin(), c.members.end());
        }
    }
    std::sort(by_period.begin(), by_period.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [n, codes] : by_period)
        out.periodic_parts.emplace_back(n, ClopenSet(sys, native.depth, std::move(codes)));

    // Aperiodic components: refine until every aperiodic multiplier is
    // coprime to all future bases.  Each split strictly divides |m|, and the
    // eventually periodic base description makes the stopping test finite.
    int64_t depth = h.depth();
    std::vector<Cycle> cycles = std::move(native.cycles);
    while (true) {
        bool stable = true;
        for (const Cycle& c : cycles)
            if (c.cls != CycleClass::periodic &&
                !sys.coprime_to_future_bases(depth, c.multiplier)) {
                stable = false;
                break;
            }
        if (stable) break;
        if (depth + 1 > depth_cap)
            throw depth_overflow("refinement cap exceeded before components stabilized");
        ++depth;
        LevelPermutation level{sys.level_size(depth), h.table_at(depth)};
        cycles = decompose_cycles(level);
    }
    out.stabilized_depth = depth;
    for (const Cycle& c : cycles) {
        if (c.cls == CycleClass::periodic) continue;
        out.components.emplace_back(sys, depth, c.members);
        out.component_orientation.push_back(c.cls == CycleClass::positive ? 1 : -1);
    }
    // Deterministic order: by least refined code.
    std::vector<std::size_t> order(out.components.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return out.components[a].codes_at(depth).front() < out.components[b].codes_at(depth).front();
    });
    std::vector<ClopenSet> comps;
    std::vector<int> orient;
    for (std::size_t i : order) {
        comps.push_back(out.components[i]);
        orient.push_back(out.component_orientation[i]);
    }
    out.components = std::move(comps);
    out.component_orientation = std::move(orient);
    return out;
}

OrbitNumbers orbit_numbers(const std::vector<Cycle>& cycles) {
    OrbitNumbers o;
    for (const Cycle& c : cycles) {
        if (c.cls == CycleClass::positive) o.positive += c.multiplier;
        if (c.cls == CycleClass::negative) o.negative += -c.multiplier;
    }
    return o;
}

OrbitNumbers orbit_numbers(const Element& h) { return orbit_numbers(cycle_graph(h).cycles); }

int64_t index_of(const Element& h) {
    int64_t size = h.system().level_size(h.depth());
    __int128 sum = 0;
    for (int64_t n : h.table()) sum += n;
    ensure(sum % size == 0, "index: table sum not divisible by B_D");
    int64_t idx = static_cast<int64_t>(sum / size);
    OrbitNumbers o = orbit_numbers(h);
    ensure(idx == o.positive - o.negative, "index disagrees with orbit numbers");
    return idx;
}

Rational empirical_index(const Element& h, int64_t start, int64_t length) {
    ensure(length >= 1, "empirical_index: length must be >= 1");
    int64_t size = h.system().level_size(h.depth());
    const std::vector<int64_t>& tab = h.table();
    // Sum the table over j = start+1 .. start+l: full blocks plus a tail.
    __int128 block_sum = 0;
    for (int64_t n : tab) block_sum += n;
    int64_t full = length / size;
    __int128 sum = block_sum * full;
    for (int64_t j = full * size + 1; j <= length; ++j)
        sum += tab[static_cast<std::size_t>(floor_mod(start + j, size))];
    int64_t num = static_cast<int64_t>(sum);
    int64_t g = std::gcd(num < 0 ? -num : num, length);
    if (g == 0) return {0, 1};
    return {num / g, length / g};
}

bool meets_every_infinite_orbit(const Element& h, const ClopenSet& a, Orientation which) {
    MinimalPeriodicPartition p = minimal_periodic_partition(h);
    for (std::size_t i = 0; i < p.components.size(); ++i) {
        if (which == Orientation::forward && p.component_orientation[i] < 0) continue;
        if (which == Orientation::backward && p.component_orientation[i] > 0) continue;
        if (a.intersect(p.components[i]).is_empty()) return false;
    }
    return true;
}

}  // namespace tfg
