#include "tfg/oracle.hpp"

#include <algorithm>

#include "tfg/orbit.hpp"

namespace tfg {

namespace {

int64_t floor_mod(int64_t a, int64_t m) {
    int64_t r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

OrbitStats simulate_line(const Element& h, int64_t window) {
    int64_t size = h.system().level_size(h.depth());
    if (window < size)
        throw input_error("simulation window must cover at least one block of size " +
                          std::to_string(size));
    const std::vector<int64_t>& tab = h.table();
    auto move = [&](int64_t t) { return t + tab[static_cast<std::size_t>(floor_mod(t, size))]; };

    OrbitStats stats;
    stats.window = window;
    int64_t count = 2 * window + 1;
    stats.orbit_id.assign(static_cast<std::size_t>(count), -1);
    auto id_at = [&](int64_t t) -> int64_t& {
        return stats.orbit_id[static_cast<std::size_t>(t + window)];
    };

    // The drift of an infinite orbit is locked once the displacement from
    // the trace origin exceeds every partial-sum fluctuation.
    int64_t lock = size * h.norm() + 1;

    for (int64_t start = -window; start <= window; ++start) {
        if (id_at(start) >= 0) continue;
        OrbitStats::Orbit orbit;
        orbit.id = static_cast<int64_t>(stats.orbits.size());
        orbit.least_point = start;
        bool negative_side = false, nonnegative_side = false;

        // Forward until leaving the window or closing up.
        int64_t t = start;
        bool periodic = false;
        while (true) {
            if (id_at(t) < 0) {
                id_at(t) = orbit.id;
                ++orbit.size;
                orbit.least_point = std::min(orbit.least_point, t);
                (t < 0 ? negative_side : nonnegative_side) = true;
            }
            int64_t next = move(t);
            if (next == start) { periodic = true; break; }
            if (next < -window || next > window) { orbit.touches_boundary = true; break; }
            t = next;
        }
        if (periodic) {
            orbit.period = orbit.size;
            orbit.drift = 0;
        } else {
            // Backward part of the same trace.  The preimage of t lies in
            // [t - |h|_g, t + |h|_g] since steps are bounded by the norm.
            t = start;
            while (true) {
                int64_t found = t;
                bool have = false;
                for (int64_t u = t - h.norm(); u <= t + h.norm(); ++u) {
                    if (u != t && move(u) == t) { found = u; have = true; break; }
                }
                if (!have) throw internal_error("simulate_line: missing preimage");
                if (found < -window || found > window) { orbit.touches_boundary = true; break; }
                if (id_at(found) >= 0) break;  // already part of a trace
                t = found;
                id_at(t) = orbit.id;
                ++orbit.size;
                orbit.least_point = std::min(orbit.least_point, t);
                (t < 0 ? negative_side : nonnegative_side) = true;
            }
            // Walk forward from start until the displacement locks the sign:
            // past one fluctuation every further loop moves the same way.
            // Orbits cut off by the window edge can still be periodic, which
            // shows up here as a return to the start.
            int64_t pos = start, steps = 0;
            int64_t step_bound = (2 * h.norm() + 2) * size + 8;
            while (pos - start <= lock && pos - start >= -lock) {
                pos = move(pos);
                ++steps;
                if (pos == start) break;
                ensure(steps <= step_bound, "simulate_line: drift failed to lock");
            }
            if (pos == start) {
                orbit.period = steps;
                orbit.drift = 0;
            } else {
                orbit.drift = pos - start > 0 ? 1 : -1;
            }
        }
        orbit.crosses_center = negative_side && nonnegative_side;
        if (orbit.period == 0 && orbit.crosses_center)
            (orbit.drift > 0 ? stats.crossing_positive : stats.crossing_negative) += 1;
        stats.orbits.push_back(orbit);
    }

    for (int64_t t = -window; t <= window; ++t)
        stats.cocycle_sum += tab[static_cast<std::size_t>(floor_mod(t, size))];
    return stats;
}

RefineReport deep_refine_check(const Element& h, int64_t extra) {
    ensure(extra >= 1, "deep_refine_check: extra must be >= 1");
    RefineReport report;
    MinimalPeriodicPartition stable = minimal_periodic_partition(h);
    report.base_depth = stable.stabilized_depth;
    report.checked_depth = stable.stabilized_depth + extra;

    const OdometerSystem& sys = h.system();
    int64_t deep = report.checked_depth;
    LevelPermutation level{sys.level_size(deep), h.table_at(deep)};
    std::vector<Cycle> cycles = decompose_cycles(level);

    auto contains_all = [&](const ClopenSet& part, const Cycle& c) {
        for (int64_t w : c.members)
            if (!part.contains({deep, w})) return false;
        return true;
    };
    auto contains_any = [&](const ClopenSet& part, const Cycle& c) {
        for (int64_t w : c.members)
            if (part.contains({deep, w})) return true;
        return false;
    };
    auto flag = [&](std::string msg) {
        report.consistent = false;
        report.violations.push_back(std::move(msg));
    };

    std::vector<int64_t> cycles_in_component(stable.components.size(), 0);
    for (const Cycle& c : cycles) {
        bool placed = false;
        for (const auto& [n, part] : stable.periodic_parts) {
            if (!contains_any(part, c)) continue;
            placed = true;
            if (!contains_all(part, c)) flag("cycle straddles a periodic part");
            if (c.cls != CycleClass::periodic || c.length() != n)
                flag("periodic part cycle changed class or period");
        }
        for (std::size_t i = 0; i < stable.components.size(); ++i) {
            if (!contains_any(stable.components[i], c)) continue;
            if (placed) flag("cycle belongs to two stabilized parts");
            placed = true;
            if (!contains_all(stable.components[i], c)) flag("cycle straddles components");
            ++cycles_in_component[i];
            int expected = stable.component_orientation[i];
            if ((expected > 0) != (c.cls == CycleClass::positive) || c.cls == CycleClass::periodic)
                flag("component cycle changed orientation");
        }
        if (!placed) flag("cycle not covered by the stabilized partition");
    }
    // Stabilized multipliers are coprime to all future bases, so each
    // component must still be one single cycle at the deeper level.
    for (std::size_t i = 0; i < cycles_in_component.size(); ++i)
        if (cycles_in_component[i] != 1)
            flag("component split after stabilization");
    return report;
}

}  // namespace tfg
