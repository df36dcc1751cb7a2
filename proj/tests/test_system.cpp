#include <doctest.h>

#include "generators.hpp"
#include "tfg/system.hpp"

using namespace tfg;

TEST_CASE("system normalization") {
    CHECK(OdometerSystem({}, {2, 2}) == OdometerSystem({}, {2}));
    CHECK(OdometerSystem({2}, {2}) == OdometerSystem({}, {2}));
    CHECK(OdometerSystem({2, 3}, {2, 3}) == OdometerSystem({}, {2, 3}));
    CHECK(OdometerSystem({3, 2}, {2}) == OdometerSystem({3}, {2}));
    CHECK(OdometerSystem({}, {2, 3}) != OdometerSystem({}, {3, 2}));
    CHECK_THROWS_AS(OdometerSystem({}, {}), input_error);
    CHECK_THROWS_AS(OdometerSystem({1}, {2}), input_error);
}

TEST_CASE("level sizes and bases") {
    OdometerSystem sys({2}, {3});
    CHECK(sys.base_at(1) == 2);
    CHECK(sys.base_at(2) == 3);
    CHECK(sys.base_at(5) == 3);
    CHECK(sys.level_size(0) == 1);
    CHECK(sys.level_size(3) == 18);
    CHECK(sys.tail_from(1) == OdometerSystem({}, {3}));
    CHECK(sys.tail_from(4) == OdometerSystem({}, {3}));
    CHECK(OdometerSystem({}, {2, 3}).tail_from(1) == OdometerSystem({}, {3, 2}));
}

TEST_CASE("coprime to future bases") {
    OdometerSystem dyadic = testgen::dyadic();
    CHECK(dyadic.coprime_to_future_bases(0, 1));
    CHECK(dyadic.coprime_to_future_bases(0, 3));
    CHECK(!dyadic.coprime_to_future_bases(0, 2));
    CHECK(!dyadic.coprime_to_future_bases(5, -6));
    OdometerSystem mixed({2}, {3});
    CHECK(mixed.coprime_to_future_bases(1, 2));   // only 3s remain
    CHECK(!mixed.coprime_to_future_bases(0, 2));  // preperiod entry 2
}

TEST_CASE("canonicalization of clopen sets") {
    OdometerSystem dyadic = testgen::dyadic();
    // Full space at depth 2.
    ClopenSet full(dyadic, 2, {0, 1, 2, 3});
    CHECK(full == ClopenSet::whole_space(dyadic));
    CHECK(full.depth() == 0);
    // Sibling merge: codes {0,2} at depth 2 share low digit 0.
    ClopenSet half(dyadic, 2, {0, 2});
    CHECK(half.depth() == 1);
    CHECK(half.codes() == std::vector<int64_t>{0});
    // No merge possible.
    ClopenSet three(dyadic, 2, {0, 1, 2});
    CHECK(three.depth() == 2);
    CHECK(three.codes() == std::vector<int64_t>{0, 1, 2});
    // Empty set normalizes to depth 0.
    CHECK(ClopenSet(dyadic, 3, {}).depth() == 0);
    CHECK_THROWS_AS(ClopenSet(dyadic, 1, {7}), code_out_of_range);
}

TEST_CASE("canonicalize is idempotent and refinement independent") {
    testgen::Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        OdometerSystem sys = trial % 2 ? testgen::mixed() : testgen::dyadic();
        ClopenSet a = testgen::random_set(rng, sys, 4);
        ClopenSet again(sys, a.depth(), a.codes());
        CHECK(a == again);
        // Rebuilding from refined codes lands on the same canonical form.
        ClopenSet refined(sys, a.depth() + 2, a.codes_at(a.depth() + 2));
        CHECK(a == refined);
    }
}

TEST_CASE("set algebra") {
    OdometerSystem dyadic = testgen::dyadic();
    ClopenSet zero = ClopenSet::cylinder(dyadic, {1, 0});
    ClopenSet one = ClopenSet::cylinder(dyadic, {1, 1});
    CHECK(zero.union_with(one) == ClopenSet::whole_space(dyadic));
    CHECK(one.translate(-1) == zero);
    ClopenSet eleven = ClopenSet::cylinder(dyadic, {2, 3});
    CHECK(zero.intersect(eleven).is_empty());
    CHECK(zero.complement() == one);
    CHECK(eleven.subset_of(one));
    CHECK(!one.subset_of(eleven));
    CHECK(zero.measure() == std::pair<int64_t, int64_t>{1, 2});

    OdometerSystem other({}, {3});
    CHECK_THROWS_AS(zero.union_with(ClopenSet::whole_space(other)), system_mismatch);
}

TEST_CASE("set algebra independent of refinement depth") {
    testgen::Rng rng(11);
    OdometerSystem sys = testgen::mixed();
    for (int trial = 0; trial < 30; ++trial) {
        ClopenSet a = testgen::random_set(rng, sys, 3);
        ClopenSet b = testgen::random_set(rng, sys, 3);
        int64_t deep = std::max(a.depth(), b.depth()) + 1;
        ClopenSet a_deep(sys, deep, a.codes_at(deep));
        CHECK(a.union_with(b) == a_deep.union_with(b));
        CHECK(a.intersect(b) == a_deep.intersect(b));
        CHECK(a.difference(b) == a_deep.difference(b));
    }
}

TEST_CASE("translate distributes over the set structure") {
    testgen::Rng rng(13);
    OdometerSystem sys = testgen::dyadic();
    for (int trial = 0; trial < 30; ++trial) {
        ClopenSet a = testgen::random_set(rng, sys, 4);
        int64_t t = static_cast<int64_t>(rng() % 17) - 8;
        CHECK(a.translate(t).translate(-t) == a);
        CHECK(a.translate(t).complement() == a.complement().translate(t));
    }
}

TEST_CASE("mirror is an involution exchanging translation direction") {
    testgen::Rng rng(17);
    OdometerSystem sys = testgen::mixed();
    for (int trial = 0; trial < 30; ++trial) {
        ClopenSet a = testgen::random_set(rng, sys, 3);
        CHECK(a.mirror().mirror() == a);
        CHECK(a.translate(1).mirror() == a.mirror().translate(-1));
    }
}
