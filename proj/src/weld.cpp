#include "tfg/weld.hpp"

#include <algorithm>
#include <string>

namespace tfg {

namespace {

int64_t floor_mod(int64_t a, int64_t m) {
    int64_t r = a % m;
    return r < 0 ? r + m : r;
}

int64_t floor_div(int64_t a, int64_t m) {
    int64_t q = a / m;
    if ((a % m != 0) && ((a < 0) != (m < 0))) --q;
    return q;
}

void check_cylinder(const OdometerSystem& sys, Cylinder c, const char* what) {
    if (c.depth < 0 || c.code < 0 || c.code >= sys.level_size(c.depth))
        throw code_out_of_range(std::string(what) + ": cylinder code out of range");
}

std::vector<KakutaniStep> normalized_program(const OdometerSystem& src_sys, Cylinder src,
                                             const OdometerSystem& tgt_sys, Cylinder tgt,
                                             int64_t shift) {
    std::vector<KakutaniStep> program;
    program.push_back({KakutaniStep::Kind::tail_identify, src_sys, src, tgt_sys, tgt, 0});
    if (shift != 0)
        program.push_back({KakutaniStep::Kind::power, tgt_sys, tgt, tgt_sys, tgt,
                           shift * tgt_sys.level_size(tgt.depth)});
    return program;
}

}  // namespace

KakutaniMap::KakutaniMap(OdometerSystem source_system, Cylinder source,
                         OdometerSystem target_system, Cylinder target, int64_t tail_shift,
                         std::vector<KakutaniStep> program)
    : source_system_(std::move(source_system)),
      source_(source),
      target_system_(std::move(target_system)),
      target_(target),
      tail_shift_(tail_shift),
      program_(std::move(program)) {
    check_cylinder(source_system_, source_, "kakutani map source");
    check_cylinder(target_system_, target_, "kakutani map target");
    if (!(source_system_.tail_from(source_.depth) == target_system_.tail_from(target_.depth)))
        throw tail_mismatch("cylinder tails have different base sequences");
    // Replay the program: each step must chain cylinder-to-cylinder, and
    // the net map must equal the declared (source, target, shift).
    ensure(!program_.empty(), "kakutani map needs a nonempty program");
    OdometerSystem at_sys = source_system_;
    Cylinder at = source_;
    int64_t shift = 0;
    for (const KakutaniStep& step : program_) {
        if (step.kind == KakutaniStep::Kind::tail_identify) {
            ensure(at_sys == step.from_system && at == step.from,
                   "kakutani program does not chain");
            if (!(step.from_system.tail_from(step.from.depth) ==
                  step.to_system.tail_from(step.to.depth)))
                throw tail_mismatch("tail identification between different tails");
            at_sys = step.to_system;
            at = step.to;
        } else {
            ensure(at_sys == step.to_system, "kakutani power step in the wrong system");
            int64_t level = at_sys.level_size(at.depth);
            int64_t moved = at.code + step.exponent;
            shift += floor_div(moved, level);
            at = {at.depth, floor_mod(moved, level)};
        }
    }
    ensure(at_sys == target_system_ && at == target_ && shift == tail_shift_,
           "kakutani program disagrees with the declared map");
}

KakutaniMap KakutaniMap::inverse() const {
    return KakutaniMap(target_system_, target_, source_system_, source_, -tail_shift_,
                       normalized_program(target_system_, target_, source_system_, source_,
                                          -tail_shift_));
}

KakutaniMap KakutaniMap::restrict_source(int64_t levels, int64_t extra) const {
    if (levels == 0) {
        ensure(extra == 0, "restrict_source: extra digits without levels");
        return *this;
    }
    OdometerSystem tail = source_system_.tail_from(source_.depth);
    int64_t block = tail.level_size(levels);
    ensure(extra >= 0 && extra < block, "restrict_source: extra digits out of range");
    Cylinder src{source_.depth + levels,
                 source_.code + extra * source_system_.level_size(source_.depth)};
    int64_t moved = extra + tail_shift_;
    int64_t target_extra = floor_mod(moved, block);
    int64_t shift = floor_div(moved, block);
    Cylinder tgt{target_.depth + levels,
                 target_.code + target_extra * target_system_.level_size(target_.depth)};
    return KakutaniMap(source_system_, src, target_system_, tgt, shift,
                       normalized_program(source_system_, src, target_system_, tgt, shift));
}

KakutaniMap KakutaniMap::restrict_target_to_zero(int64_t levels) const {
    if (levels == 0) return *this;
    OdometerSystem tail = source_system_.tail_from(source_.depth);
    int64_t block = tail.level_size(levels);
    return restrict_source(levels, floor_mod(-tail_shift_, block));
}

KakutaniMap canonical_equivalence(const OdometerSystem& sys1, Cylinder w1,
                                  const OdometerSystem& sys2, Cylinder w2) {
    check_cylinder(sys1, w1, "canonical equivalence source");
    check_cylinder(sys2, w2, "canonical equivalence target");
    if (!(sys1.tail_from(w1.depth) == sys2.tail_from(w2.depth)))
        throw tail_mismatch("cylinder tails have different base sequences");
    return KakutaniMap(sys1, w1, sys2, w2, 0, normalized_program(sys1, w1, sys2, w2, 0));
}

KakutaniMap compose_equivalences(const KakutaniMap& k12, const KakutaniMap& k23) {
    if (!(k12.target_system() == k23.source_system()))
        throw system_mismatch("composed equivalences must share the middle system");
    const OdometerSystem& mid = k12.target_system();
    int64_t common = std::max(k12.target().depth, k23.source().depth);
    KakutaniMap a = k12.restrict_target_to_zero(common - k12.target().depth);
    KakutaniMap b = k23.restrict_source(common - k23.source().depth, 0);
    int64_t level = mid.level_size(common);
    // Power of the middle system carrying a's target onto b's source.
    int64_t t = floor_mod(b.source().code - a.target().code, level);
    int64_t carry = floor_div(a.target().code + t, level);
    int64_t shift = a.tail_shift() + carry + b.tail_shift();

    std::vector<KakutaniStep> program;
    program.push_back({KakutaniStep::Kind::tail_identify, a.source_system(), a.source(),
                       a.target_system(), a.target(), 0});
    int64_t mid_power = t + a.tail_shift() * level;
    if (mid_power != 0)
        program.push_back(
            {KakutaniStep::Kind::power, mid, a.target(), mid, b.source(), mid_power});
    program.push_back({KakutaniStep::Kind::tail_identify, b.source_system(), b.source(),
                       b.target_system(), b.target(), 0});
    if (b.tail_shift() != 0)
        program.push_back({KakutaniStep::Kind::power, b.target_system(), b.target(),
                           b.target_system(), b.target(),
                           b.tail_shift() * b.target_system().level_size(b.target().depth)});
    return KakutaniMap(a.source_system(), a.source(), b.target_system(), b.target(), shift,
                       std::move(program));
}

std::size_t WeldedSystem::flat_index(TaggedCylinder c) const {
    std::size_t offset = 0;
    for (const Component& comp : components_) {
        int64_t count = comp.system.level_size(comp.depth);
        if (comp.tag == c.tag) {
            ensure(c.code >= 0 && c.code < count, "tagged cylinder code out of range");
            return offset + static_cast<std::size_t>(c.code);
        }
        offset += static_cast<std::size_t>(count);
    }
    throw internal_error("unknown component tag");
}

void WeldedSystem::rebuild_certificate() {
    int64_t n = cylinder_count();
    cycle_order_.clear();
    cycle_order_.reserve(static_cast<std::size_t>(n));
    position_.assign(static_cast<std::size_t>(n), -1);
    TaggedCylinder at{components_.front().tag, 0};
    int64_t loop_shift = 0;
    for (int64_t p = 0; p < n; ++p) {
        std::size_t idx = flat_index(at);
        ensure(position_[idx] < 0, "welded quotient is not a single cycle");
        position_[idx] = p;
        cycle_order_.push_back(at);
        loop_shift += arrows_[idx].shift;
        at = arrows_[idx].target;
    }
    ensure(at == cycle_order_.front(), "welded quotient walk did not close");
    ensure(loop_shift == 1, "welded loop must advance the tail by exactly one");
}

void WeldedSystem::refine() {
    // All components share one tail system (every arrow preserves tails),
    // so one branching base applies across the refinement level.
    int64_t branch =
        components_.front().system.base_at(components_.front().depth + 1);
    for (const Component& comp : components_)
        ensure(comp.system.base_at(comp.depth + 1) == branch,
               "welded components have diverging tails");

    std::vector<Component> fine = components_;
    for (Component& comp : fine) ++comp.depth;

    auto coarse_count = [&](int tag) {
        const Component& c = components_[static_cast<std::size_t>(tag - 1)];
        return c.system.level_size(c.depth);
    };

    WeldedSystem next;
    next.components_ = fine;
    next.arrows_.assign(static_cast<std::size_t>(cylinder_count() * branch), Arrow{});
    for (const Component& comp : components_) {
        int64_t count = comp.system.level_size(comp.depth);
        for (int64_t w = 0; w < count; ++w) {
            const Arrow& coarse = arrow({comp.tag, w});
            for (int64_t j = 0; j < branch; ++j) {
                // The first tail digit moves by the coarse shift; overflow
                // carries into the remaining tail.
                int64_t moved = j + coarse.shift;
                TaggedCylinder child{comp.tag, w + j * count};
                TaggedCylinder target{coarse.target.tag,
                                      coarse.target.code +
                                          floor_mod(moved, branch) * coarse_count(coarse.target.tag)};
                next.arrows_[next.flat_index(child)] = {target, floor_div(moved, branch)};
            }
        }
    }
    next.rebuild_certificate();
    *this = std::move(next);
}

WeldedSystem weld(const OdometerSystem& sys1, const OdometerSystem& sys2,
                  const KakutaniMap& kappa, int64_t depth_cap) {
    if (!(kappa.source_system() == sys1) || !(kappa.target_system() == sys2))
        throw system_mismatch("kakutani map does not connect the welded systems");
    KakutaniMap k = kappa;
    // g_i Y_i must be disjoint from Y_i; distinct codes at depth >= 1 give
    // that, restricting kappa once if either side sits at depth 0.
    while (k.source().depth == 0 || k.target().depth == 0) {
        if (std::max(k.source().depth, k.target().depth) + 1 > depth_cap)
            throw overlap_error("cannot separate g Y from Y within the depth cap");
        k = k.restrict_source(1, 0);
    }

    WeldedSystem w;
    w.components_.push_back({1, sys1, k.source().depth});
    w.components_.push_back({2, sys2, k.target().depth});
    int64_t b1 = sys1.level_size(k.source().depth);
    int64_t b2 = sys2.level_size(k.target().depth);
    int64_t y1 = k.source().code, y2 = k.target().code;
    w.arrows_.assign(static_cast<std::size_t>(b1 + b2), WeldedSystem::Arrow{});
    for (int64_t v = 0; v < b1; ++v) {
        WeldedSystem::Arrow a;
        if (v == y1) {
            // Through kappa, then one step of g_2.
            a.target = {2, floor_mod(y2 + 1, b2)};
            a.shift = k.tail_shift() + floor_div(y2 + 1, b2);
        } else {
            a.target = {1, floor_mod(v + 1, b1)};
            a.shift = floor_div(v + 1, b1);
        }
        w.arrows_[w.flat_index({1, v})] = a;
    }
    for (int64_t v = 0; v < b2; ++v) {
        WeldedSystem::Arrow a;
        if (v == y2) {
            // kappa^{-1}, the inverse first return of g_1 (the tail's -1),
            // then one step of g_1.
            a.target = {1, floor_mod(y1 + 1, b1)};
            a.shift = -k.tail_shift() - 1 + floor_div(y1 + 1, b1);
        } else {
            a.target = {2, floor_mod(v + 1, b2)};
            a.shift = floor_div(v + 1, b2);
        }
        w.arrows_[w.flat_index({2, v})] = a;
    }
    w.rebuild_certificate();
    return w;
}

WeldedSystem single_component_weld(const OdometerSystem& sys, int64_t depth) {
    WeldedSystem w;
    w.components_.push_back({1, sys, depth});
    int64_t count = sys.level_size(depth);
    w.arrows_.assign(static_cast<std::size_t>(count), WeldedSystem::Arrow{});
    for (int64_t v = 0; v < count; ++v)
        w.arrows_[w.flat_index({1, v})] = {{1, floor_mod(v + 1, count)},
                                           floor_div(v + 1, count)};
    w.rebuild_certificate();
    return w;
}

Element induced_on_component(const WeldedSystem& w, int tag) {
    const WeldedSystem::Component* comp = nullptr;
    for (const auto& c : w.components())
        if (c.tag == tag) comp = &c;
    ensure(comp != nullptr, "induced_on_component: unknown tag");
    int64_t count = comp->system.level_size(comp->depth);
    std::vector<int64_t> table(static_cast<std::size_t>(count));
    for (int64_t v = 0; v < count; ++v) {
        WeldedSystem::TaggedCylinder at{tag, v};
        int64_t shift = 0;
        int64_t guard = 0;
        do {
            const WeldedSystem::Arrow& a = w.arrow(at);
            shift += a.shift;
            at = a.target;
            ensure(++guard <= w.cylinder_count(), "first return walk failed to close");
        } while (at.tag != tag);
        table[static_cast<std::size_t>(v)] = (at.code - v) + shift * count;
    }
    Element result(comp->system, comp->depth, std::move(table));
    ensure(result == Element::generator_power(comp->system, 1),
           "first return to a component must recover its generator");
    return result;
}

namespace {

// Exponent table of the piecewise map in quotient-cycle coordinates.
std::vector<int64_t> solve_powers(const WeldedSystem& w, const std::vector<Element>& specs) {
    int64_t n = w.cylinder_count();
    // Prefix shift sums along the cycle; prefix[p + n] = prefix[p] + 1.
    std::vector<int64_t> prefix(static_cast<std::size_t>(n) + 1, 0);
    for (int64_t p = 0; p < n; ++p)
        prefix[static_cast<std::size_t>(p + 1)] =
            prefix[static_cast<std::size_t>(p)] + w.arrow(w.cycle_order()[static_cast<std::size_t>(p)]).shift;
    auto path_shift = [&](int64_t from_pos, int64_t steps) {
        int64_t wraps = floor_div(from_pos + steps, n) - floor_div(from_pos, n);
        int64_t a = floor_mod(from_pos, n), b = floor_mod(from_pos + steps, n);
        return prefix[static_cast<std::size_t>(b)] - prefix[static_cast<std::size_t>(a)] + wraps;
    };

    std::vector<int64_t> weight(static_cast<std::size_t>(n), 0);
    for (std::size_t ci = 0; ci < w.components().size(); ++ci) {
        const auto& comp = w.components()[ci];
        const Element& h = specs[ci];
        int64_t count = comp.system.level_size(comp.depth);
        std::vector<int64_t> table = h.table_at(comp.depth);
        for (int64_t v = 0; v < count; ++v) {
            int64_t moved = v + table[static_cast<std::size_t>(v)];
            WeldedSystem::TaggedCylinder target{comp.tag, floor_mod(moved, count)};
            int64_t want_shift = floor_div(moved, count);
            int64_t from = w.position_of({comp.tag, v});
            int64_t steps = floor_mod(w.position_of(target) - from, n);
            // Adding whole loops changes the tail shift by one per loop.
            int64_t e = steps + (want_shift - path_shift(from, steps)) * n;
            weight[static_cast<std::size_t>(from)] = e;
        }
    }
    return weight;
}

}  // namespace

WeldAnalysis weld_element(WeldedSystem w, std::vector<Element> component_specs,
                          int64_t depth_cap) {
    ensure(component_specs.size() == w.components().size(),
           "weld_element: one spec per component required");
    for (std::size_t i = 0; i < component_specs.size(); ++i)
        if (!(component_specs[i].system() == w.components()[i].system))
            throw system_mismatch("component spec over the wrong odometer system");
    auto needs_depth = [&]() {
        for (std::size_t i = 0; i < component_specs.size(); ++i)
            if (component_specs[i].depth() > w.components()[i].depth) return true;
        return false;
    };
    while (needs_depth()) {
        if (w.components().front().depth + 1 > depth_cap)
            throw not_in_full_group("component spec not expressible within the depth cap");
        w.refine();
    }

    WeldAnalysis out;
    out.system = w;
    std::vector<int64_t> weight = solve_powers(w, component_specs);
    for (int64_t p = 0; p < w.cylinder_count(); ++p)
        out.table.emplace_back(w.cycle_order()[static_cast<std::size_t>(p)],
                               weight[static_cast<std::size_t>(p)]);
    std::sort(out.table.begin(), out.table.end(), [](const auto& a, const auto& b) {
        return a.first.tag != b.first.tag ? a.first.tag < b.first.tag
                                          : a.first.code < b.first.code;
    });
    out.cycles = decompose_cycles({w.cylinder_count(), weight});
    out.orbits = orbit_numbers(out.cycles);
    __int128 sum = 0;
    for (int64_t e : weight) sum += e;
    ensure(sum % w.cylinder_count() == 0, "weld_element: index not divisible");
    out.index = static_cast<int64_t>(sum / w.cylinder_count());
    ensure(out.index == out.orbits.positive - out.orbits.negative,
           "weld_element: index disagrees with orbit numbers");

    // Minimal components: refine while some aperiodic multiplier still
    // shares a factor with a future base (the gcd-splitting rule, run on
    // the quotient cycle instead of B_D).
    std::vector<Cycle> cycles = out.cycles;
    while (true) {
        bool stable = true;
        for (const Cycle& c : cycles) {
            if (c.cls == CycleClass::periodic) continue;
            const auto& cyl = w.cycle_order()[static_cast<std::size_t>(c.members.front())];
            const auto& comp = w.components()[static_cast<std::size_t>(cyl.tag - 1)];
            if (!comp.system.coprime_to_future_bases(comp.depth, c.multiplier)) {
                stable = false;
                break;
            }
        }
        if (stable) break;
        if (w.components().front().depth + 1 > depth_cap)
            throw depth_overflow("weld_element: component refinement cap exceeded");
        w.refine();
        cycles = decompose_cycles({w.cylinder_count(), solve_powers(w, component_specs)});
    }
    out.component_count = 0;
    for (const Cycle& c : cycles)
        if (c.cls != CycleClass::periodic) ++out.component_count;
    return out;
}

}  // namespace tfg
