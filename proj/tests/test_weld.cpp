#include <doctest.h>

#include "generators.hpp"
#include "tfg/weld.hpp"

using namespace tfg;

namespace {

using Tagged = WeldedSystem::TaggedCylinder;

WeldedSystem dyadic_two_copy_weld() {
    OdometerSystem sys = testgen::dyadic();
    KakutaniMap kappa = canonical_equivalence(sys, {1, 0}, sys, {1, 0});
    return weld(sys, sys, kappa);
}

}  // namespace

TEST_CASE("canonical equivalences and tail checks") {
    OdometerSystem dyadic = testgen::dyadic();
    KakutaniMap same = canonical_equivalence(dyadic, {1, 0}, dyadic, {1, 0});
    CHECK(same.tail_shift() == 0);

    // [01] and [1] both have all-2 tails.
    KakutaniMap skew = canonical_equivalence(dyadic, {2, 2}, dyadic, {1, 1});
    CHECK(skew.source() == Cylinder{2, 2});
    CHECK(skew.target() == Cylinder{1, 1});

    OdometerSystem triadic({}, {3});
    CHECK_THROWS_AS(canonical_equivalence(dyadic, {1, 0}, triadic, {1, 0}), tail_mismatch);

    // Mixed systems: tails agree after the differing head digits.
    OdometerSystem mixed({2}, {3});
    KakutaniMap cross = canonical_equivalence(mixed, {1, 0}, triadic, {0, 0});
    CHECK(cross.source() == Cylinder{1, 0});
}

TEST_CASE("inverse and restriction of kakutani maps") {
    OdometerSystem dyadic = testgen::dyadic();
    KakutaniMap skew = canonical_equivalence(dyadic, {2, 2}, dyadic, {1, 1});
    KakutaniMap back = skew.inverse();
    CHECK(back.source() == Cylinder{1, 1});
    CHECK(back.target() == Cylinder{2, 2});
    CHECK(back.tail_shift() == 0);

    KakutaniMap narrowed = skew.restrict_source(1, 1);
    CHECK(narrowed.source() == Cylinder{3, 2 + 1 * 4});
    CHECK(narrowed.target() == Cylinder{2, 1 + 1 * 2});
    CHECK(narrowed.tail_shift() == 0);
}

TEST_CASE("composition of equivalences") {
    OdometerSystem dyadic = testgen::dyadic();
    // Three copies, trivial maps: composite is trivial.
    KakutaniMap k12 = canonical_equivalence(dyadic, {1, 0}, dyadic, {1, 0});
    KakutaniMap k23 = canonical_equivalence(dyadic, {1, 0}, dyadic, {1, 0});
    KakutaniMap both = compose_equivalences(k12, k23);
    CHECK(both.source() == Cylinder{1, 0});
    CHECK(both.target() == Cylinder{1, 0});
    CHECK(both.tail_shift() == 0);

    // k12 lands in [1], k23 departs from [0]: one power step with t = 1,
    // which carries past the block boundary.
    KakutaniMap into_one = canonical_equivalence(dyadic, {1, 0}, dyadic, {1, 1});
    KakutaniMap from_zero = canonical_equivalence(dyadic, {1, 0}, dyadic, {1, 0});
    KakutaniMap across = compose_equivalences(into_one, from_zero);
    CHECK(across.source() == Cylinder{1, 0});
    CHECK(across.target() == Cylinder{1, 0});
    CHECK(across.tail_shift() == 1);
    bool has_power = false;
    for (const KakutaniStep& s : across.program())
        if (s.kind == KakutaniStep::Kind::power) has_power = true;
    CHECK(has_power);

    // Direct splice: k12 into [1], k23 out of [1].
    KakutaniMap out_of_one = canonical_equivalence(dyadic, {1, 1}, dyadic, {1, 0});
    KakutaniMap spliced = compose_equivalences(into_one, out_of_one);
    CHECK(spliced.tail_shift() == 0);
}

TEST_CASE("the dyadic two-copy weld") {
    WeldedSystem w = dyadic_two_copy_weld();
    REQUIRE(w.components().size() == 2);
    CHECK(w.cylinder_count() == 4);
    // Quotient 4-cycle: 1:[0] -> 2:[1] -> 2:[0] -> 1:[1] -> 1:[0].
    std::vector<Tagged> expected{{1, 0}, {2, 1}, {2, 0}, {1, 1}};
    CHECK(w.cycle_order() == expected);

    CHECK(induced_on_component(w, 1) ==
          Element::generator_power(testgen::dyadic(), 1));
    CHECK(induced_on_component(w, 2) ==
          Element::generator_power(testgen::dyadic(), 1));
}

TEST_CASE("weld with a restricted kappa has a longer quotient cycle") {
    OdometerSystem dyadic = testgen::dyadic();
    KakutaniMap kappa = canonical_equivalence(dyadic, {2, 0}, dyadic, {2, 0});
    WeldedSystem w = weld(dyadic, dyadic, kappa);
    CHECK(w.cylinder_count() == 8);
    CHECK(induced_on_component(w, 1) == Element::generator_power(dyadic, 1));
    CHECK(induced_on_component(w, 2) == Element::generator_power(dyadic, 1));
}

TEST_CASE("depth-zero kappa is restricted or rejected") {
    OdometerSystem dyadic = testgen::dyadic();
    KakutaniMap top = canonical_equivalence(dyadic, {0, 0}, dyadic, {0, 0});
    WeldedSystem w = weld(dyadic, dyadic, top);
    CHECK(w.components()[0].depth >= 1);
    CHECK(induced_on_component(w, 1) == Element::generator_power(dyadic, 1));
    CHECK_THROWS_AS(weld(dyadic, dyadic, top, 0), overlap_error);
}

TEST_CASE("single component weld recovers the odometer") {
    OdometerSystem mixed = testgen::mixed();
    WeldedSystem w = single_component_weld(mixed, 2);
    CHECK(w.cylinder_count() == 6);
    CHECK(induced_on_component(w, 1) == Element::generator_power(mixed, 1));
}

TEST_CASE("refinement preserves the certificate") {
    WeldedSystem w = dyadic_two_copy_weld();
    for (int i = 0; i < 3; ++i) {
        w.refine();
        CHECK(induced_on_component(w, 1) ==
              Element::generator_power(testgen::dyadic(), 1));
    }
    CHECK(w.cylinder_count() == 32);
}

TEST_CASE("welding round trip over random canonical equivalences") {
    testgen::Rng rng(501);
    for (int trial = 0; trial < 20; ++trial) {
        OdometerSystem sys = trial % 2 ? testgen::mixed() : testgen::dyadic();
        int64_t d1 = 1 + static_cast<int64_t>(rng() % 2);
        int64_t d2 = d1;  // equal depths keep the tails aligned
        int64_t c1 = static_cast<int64_t>(rng() % sys.level_size(d1));
        int64_t c2 = static_cast<int64_t>(rng() % sys.level_size(d2));
        KakutaniMap kappa = canonical_equivalence(sys, {d1, c1}, sys, {d2, c2});
        WeldedSystem w = weld(sys, sys, kappa);
        CHECK(induced_on_component(w, 1) == Element::generator_power(sys, 1));
        CHECK(induced_on_component(w, 2) == Element::generator_power(sys, 1));
        w.refine();
        CHECK(induced_on_component(w, 1) == Element::generator_power(sys, 1));
    }
}

TEST_CASE("weld element on the flip specification") {
    WeldedSystem w = dyadic_two_copy_weld();
    OdometerSystem dyadic = testgen::dyadic();
    Element g = Element::generator_power(dyadic, 1);
    WeldAnalysis a = weld_element(w, {g, g.inverse()});
    // G-power table {1:[0]:3, 1:[1]:1, 2:[0]:-1, 2:[1]:-3}.
    REQUIRE(a.table.size() == 4);
    CHECK(a.table[0] == std::pair<Tagged, int64_t>{{1, 0}, 3});
    CHECK(a.table[1] == std::pair<Tagged, int64_t>{{1, 1}, 1});
    CHECK(a.table[2] == std::pair<Tagged, int64_t>{{2, 0}, -1});
    CHECK(a.table[3] == std::pair<Tagged, int64_t>{{2, 1}, -3});
    CHECK(a.orbits.positive == 1);
    CHECK(a.orbits.negative == 1);
    CHECK(a.component_count == 2);
    CHECK(a.index == 0);
    // Strongly p.p.m. witness: the orbit number equals the number of
    // minimal components.
    CHECK(a.orbits.positive + a.orbits.negative == a.component_count);
}

TEST_CASE("weld element on the aligned specification") {
    WeldedSystem w = dyadic_two_copy_weld();
    OdometerSystem dyadic = testgen::dyadic();
    Element g = Element::generator_power(dyadic, 1);
    WeldAnalysis a = weld_element(w, {g, g});
    REQUIRE(a.table.size() == 4);
    CHECK(a.table[0] == std::pair<Tagged, int64_t>{{1, 0}, 3});
    CHECK(a.table[1] == std::pair<Tagged, int64_t>{{1, 1}, 1});
    CHECK(a.table[2] == std::pair<Tagged, int64_t>{{2, 0}, 3});
    CHECK(a.table[3] == std::pair<Tagged, int64_t>{{2, 1}, 1});
    CHECK(a.orbits.positive == 2);
    CHECK(a.orbits.negative == 0);
    CHECK(a.component_count == 2);
    CHECK(a.index == 2);
}

TEST_CASE("weld element identity and deeper specs") {
    WeldedSystem w = dyadic_two_copy_weld();
    OdometerSystem dyadic = testgen::dyadic();
    WeldAnalysis idle = weld_element(w, {Element(dyadic), Element(dyadic)});
    CHECK(idle.orbits.positive == 0);
    CHECK(idle.orbits.negative == 0);
    CHECK(idle.index == 0);
    CHECK(idle.component_count == 0);

    // A depth-2 component element forces a refinement before solving.
    Element deep(dyadic, 2, {1, 1, 1, -3});
    WeldAnalysis solved = weld_element(dyadic_two_copy_weld(), {deep, Element(dyadic)});
    CHECK(solved.index == index_of(deep));
    CHECK_THROWS_AS(weld_element(dyadic_two_copy_weld(), {deep, Element(dyadic)}, 1),
                    not_in_full_group);
}

TEST_CASE("weld element respects component spec systems") {
    WeldedSystem w = dyadic_two_copy_weld();
    OdometerSystem triadic({}, {3});
    CHECK_THROWS_AS(weld_element(w, {Element(triadic), Element(testgen::dyadic())}),
                    system_mismatch);
}

TEST_CASE("conjugation property checked against element first returns") {
    // kappa (g1)_{Y1} = (g2)_{Y2} kappa, on every subcylinder of Y1: route
    // one applies the first return inside the source system and then maps
    // across; route two maps across first.  The first returns come from the
    // element machinery, independent of the weld representation.
    testgen::Rng rng(521);
    for (int trial = 0; trial < 20; ++trial) {
        OdometerSystem sys = trial % 2 ? testgen::mixed() : testgen::dyadic();
        int64_t d = 1 + static_cast<int64_t>(rng() % 2);
        int64_t c1 = static_cast<int64_t>(rng() % sys.level_size(d));
        int64_t c2 = static_cast<int64_t>(rng() % sys.level_size(d));
        KakutaniMap kappa = canonical_equivalence(sys, {d, c1}, sys, {d, c2});
        if (trial % 3 == 0) kappa = kappa.restrict_source(1, 0);

        int64_t b1 = sys.level_size(kappa.source().depth);
        int64_t b2 = sys.level_size(kappa.target().depth);
        OdometerSystem tail = sys.tail_from(kappa.source().depth);
        int64_t extra = 2;
        int64_t block = tail.level_size(extra);
        Element first1 = induced_generator(ClopenSet::cylinder(sys, kappa.source()));
        Element first2 = induced_generator(ClopenSet::cylinder(sys, kappa.target()));
        auto across = [&](int64_t delta) {
            return ((delta + kappa.tail_shift()) % block + block) % block;
        };
        for (int64_t delta = 0; delta < block; ++delta) {
            ClopenSet sub = ClopenSet::cylinder(
                sys, {kappa.source().depth + extra, kappa.source().code + delta * b1});
            // Route one: first return inside the source, then across.
            ClopenSet moved = first1.apply(sub);
            int64_t moved_delta = (moved.codes_at(kappa.source().depth + extra)[0] -
                                   kappa.source().code) / b1;
            int64_t route1 = kappa.target().code + across(moved_delta) * b2;
            // Route two: across, then first return inside the target.
            ClopenSet crossed = ClopenSet::cylinder(
                sys, {kappa.target().depth + extra, kappa.target().code + across(delta) * b2});
            int64_t route2 = first2.apply(crossed).codes_at(kappa.target().depth + extra)[0];
            CHECK(route1 == route2);
        }
    }
}

TEST_CASE("periodic plus aperiodic piece welds into one minimal witness") {
    // A finite-order element on one component joined with the generator on
    // the other: the welded analysis shows one infinite orbit per g-orbit
    // meeting one minimal component, the constructive shape of removing
    // the periodic part.
    OdometerSystem dyadic = testgen::dyadic();
    Element g = Element::generator_power(dyadic, 1);
    Element f(dyadic, 1, {1, -1});  // pure involution
    WeldedSystem w = dyadic_two_copy_weld();
    WeldAnalysis a = weld_element(w, {f, g});
    CHECK(a.index == 1);
    CHECK(a.orbits.positive == 1);
    CHECK(a.orbits.negative == 0);
    CHECK(a.component_count == 1);
    // The layers of f pair up inside the quotient as zero-sum cycles.
    int64_t periodic_cells = 0;
    for (const Cycle& c : a.cycles)
        if (c.cls == CycleClass::periodic) periodic_cells += c.length();
    CHECK(periodic_cells == 2);
    // Orbit number equals the component count: the strongly p.p.m. witness.
    CHECK(a.orbits.positive + a.orbits.negative == a.component_count);
}

TEST_CASE("weld analysis agrees with element analysis on one component") {
    // A single-component weld is the odometer itself, so the quotient-cycle
    // analysis must reproduce the element analysis verbatim.
    testgen::Rng rng(509);
    for (int trial = 0; trial < 20; ++trial) {
        OdometerSystem sys = trial % 2 ? testgen::mixed() : testgen::dyadic();
        Element h = testgen::random_element(rng, sys, 2, 1);
        WeldedSystem w = single_component_weld(sys, std::max<int64_t>(h.depth(), 1));
        WeldAnalysis a = weld_element(w, {h});
        OrbitNumbers o = orbit_numbers(h);
        CHECK(a.orbits.positive == o.positive);
        CHECK(a.orbits.negative == o.negative);
        CHECK(a.index == index_of(h));
        CHECK(a.component_count == minimal_periodic_partition(h).component_count());
    }
}
