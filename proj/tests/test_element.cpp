#include <doctest.h>

#include "generators.hpp"
#include "tfg/element.hpp"

using namespace tfg;

namespace {

Element dyadic_element(std::vector<int64_t> table) {
    OdometerSystem sys = testgen::dyadic();
    int64_t depth = 0, size = 1;
    while (size < static_cast<int64_t>(table.size())) { size *= 2; ++depth; }
    return Element(sys, depth, std::move(table));
}

}  // namespace

TEST_CASE("validation and canonical depth") {
    // The depth-1 table {0:3, 1:-1} is the conjugate fgf of the generator.
    Element h = dyadic_element({3, -1});
    CHECK(h.depth() == 1);
    CHECK(h.norm() == 3);

    // {0:1, 1:1} is g: canonical depth 0.
    Element g = dyadic_element({1, 1});
    CHECK(g.depth() == 0);
    CHECK(g == Element::generator_power(testgen::dyadic(), 1));

    // 0 -> 0 and 1 -> 0 collide.
    CHECK_THROWS_AS(dyadic_element({2, 1}), not_bijective);
    try {
        dyadic_element({2, 1});
    } catch (const not_bijective& e) {
        CHECK(e.colliding_a == 0);
        CHECK(e.colliding_b == 1);
    }
}

TEST_CASE("composition matches the worked dyadic vectors") {
    Element f = dyadic_element({1, -1});
    Element g = Element::generator_power(testgen::dyadic(), 1);
    Element fg = f.compose(g);
    CHECK(fg == dyadic_element({0, 2}));
    Element h = fg.compose(f);
    CHECK(h == dyadic_element({3, -1}));
    CHECK(h.compose(Element(testgen::dyadic())) == h);
}

TEST_CASE("inverse and power") {
    Element h = dyadic_element({3, -1});
    CHECK(h.inverse() == dyadic_element({1, -3}));
    Element g = Element::generator_power(testgen::dyadic(), 1);
    CHECK(g.power(2) == Element::generator_power(testgen::dyadic(), 2));
    Element g0 = induced_generator(ClopenSet::cylinder(testgen::dyadic(), {1, 0}));
    CHECK(g0.inverse() == dyadic_element({-2, 0}));
    CHECK(h.power(0).is_identity());
    CHECK(h.power(-3) == h.inverse().power(3));
    CHECK(h.power(12) == h.power(6).compose(h.power(6)));
}

TEST_CASE("induced generators") {
    OdometerSystem dyadic = testgen::dyadic();
    CHECK(induced_generator(ClopenSet::cylinder(dyadic, {1, 0})) == dyadic_element({2, 0}));
    CHECK(induced_generator(ClopenSet::cylinder(dyadic, {1, 1})) == dyadic_element({0, 2}));
    CHECK(induced_generator(ClopenSet::whole_space(dyadic)) ==
          Element::generator_power(dyadic, 1));
    CHECK_THROWS_AS(induced_generator(ClopenSet(dyadic)), empty_set_error);
}

TEST_CASE("induced generators are strongly positive with index-like support") {
    testgen::Rng rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        OdometerSystem sys = trial % 2 ? testgen::mixed() : testgen::dyadic();
        ClopenSet a = testgen::random_set(rng, sys, 4);
        Element ga = induced_generator(a);
        CHECK(ga.is_strongly_positive());
        CHECK(ga.support().subset_of(a));
        CHECK(dominates(Element(sys), ga));
    }
}

TEST_CASE("first return of an element") {
    OdometerSystem dyadic = testgen::dyadic();
    Element h = dyadic_element({3, -1});
    ClopenSet zero = ClopenSet::cylinder(dyadic, {1, 0});
    // Two h-steps from [0]: exponents 3 + (-1) = 2.
    CHECK(induced_element(h, zero) == dyadic_element({2, 0}));
    CHECK(induced_element(h, ClopenSet::whole_space(dyadic)) == h);

    testgen::Rng rng(29);
    for (int trial = 0; trial < 30; ++trial) {
        OdometerSystem sys = trial % 2 ? testgen::mixed() : testgen::dyadic();
        ClopenSet a = testgen::random_set(rng, sys, 3);
        Element g = Element::generator_power(sys, 1);
        CHECK(induced_element(g, a) == induced_generator(a));
    }
}

TEST_CASE("inverse odometer first return matches inverted induced generator") {
    testgen::Rng rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        OdometerSystem sys = trial % 2 ? testgen::mixed() : testgen::dyadic();
        ClopenSet a = testgen::random_set(rng, sys, 3);
        // First return of g^{-1} to A, computed by direct backward search.
        int64_t size = sys.level_size(a.depth());
        std::vector<int64_t> table(static_cast<std::size_t>(size), 0);
        for (int64_t w : a.codes()) {
            int64_t t = 1;
            while (true) {
                int64_t target = ((w - t) % size + size) % size;
                if (std::binary_search(a.codes().begin(), a.codes().end(), target)) break;
                ++t;
            }
            table[static_cast<std::size_t>(w)] = -t;
        }
        CHECK(Element(sys, a.depth(), table) == induced_generator(a).inverse());
    }
}

TEST_CASE("conjugation law for induced transformations") {
    testgen::Rng rng(37);
    for (int trial = 0; trial < 30; ++trial) {
        OdometerSystem sys = trial % 2 ? testgen::mixed() : testgen::dyadic();
        ClopenSet a = testgen::random_set(rng, sys, 3);
        Element g = Element::generator_power(sys, 1);
        CHECK(g.conjugate(induced_generator(a)) == induced_generator(a.translate(1)));
    }
}

TEST_CASE("group axioms on random elements") {
    testgen::Rng rng(41);
    for (int trial = 0; trial < 40; ++trial) {
        OdometerSystem sys = trial % 2 ? testgen::mixed() : testgen::dyadic();
        Element a = testgen::random_element(rng, sys, 2 + trial % 2);
        Element b = testgen::random_element(rng, sys, 1 + trial % 3);
        Element c = testgen::random_element(rng, sys, 2);
        CHECK(a.compose(b).compose(c) == a.compose(b.compose(c)));
        CHECK(a.compose(a.inverse()).is_identity());
        CHECK(a.inverse().compose(a).is_identity());
    }
}

TEST_CASE("cocycle identity for composition") {
    testgen::Rng rng(43);
    for (int trial = 0; trial < 40; ++trial) {
        OdometerSystem sys = trial % 2 ? testgen::mixed() : testgen::dyadic();
        Element a = testgen::random_element(rng, sys, 2);
        Element b = testgen::random_element(rng, sys, 2);
        Element ab = a.compose(b);
        int64_t depth = std::max({a.depth(), b.depth(), ab.depth()});
        int64_t size = sys.level_size(depth);
        std::vector<int64_t> ta = a.table_at(depth), tb = b.table_at(depth),
                             tab = ab.table_at(depth);
        for (int64_t w = 0; w < size; ++w) {
            int64_t mid = ((w + tb[static_cast<std::size_t>(w)]) % size + size) % size;
            CHECK(tab[static_cast<std::size_t>(w)] ==
                  ta[static_cast<std::size_t>(mid)] + tb[static_cast<std::size_t>(w)]);
        }
    }
}

TEST_CASE("strongly positive elements form a submonoid") {
    testgen::Rng rng(47);
    for (int trial = 0; trial < 30; ++trial) {
        OdometerSystem sys = testgen::dyadic();
        Element a = testgen::random_strongly_positive(rng, sys, 3, 2);
        Element b = testgen::random_strongly_positive(rng, sys, 3, 2);
        CHECK(a.is_strongly_positive());
        CHECK(b.is_strongly_positive());
        CHECK(a.compose(b).is_strongly_positive());
    }
}

TEST_CASE("right translation by a large generator power is strongly positive") {
    testgen::Rng rng(53);
    for (int trial = 0; trial < 30; ++trial) {
        OdometerSystem sys = trial % 2 ? testgen::mixed() : testgen::dyadic();
        Element a = testgen::random_element(rng, sys, 2, 2);
        for (int64_t k = a.norm(); k <= a.norm() + 1; ++k)
            CHECK(a.compose(Element::generator_power(sys, k)).is_strongly_positive());
    }
}

TEST_CASE("only powers of g commute with g") {
    testgen::Rng rng(59);
    OdometerSystem sys = testgen::dyadic();
    Element g = Element::generator_power(sys, 1);
    for (int trial = 0; trial < 40; ++trial) {
        Element a = testgen::random_element(rng, sys, 2);
        bool commutes = a.compose(g) == g.compose(a);
        CHECK(commutes == (a.depth() == 0));
    }
    CHECK(g.power(5).compose(g) == g.compose(g.power(5)));
}

TEST_CASE("domination order") {
    OdometerSystem dyadic = testgen::dyadic();
    Element g = Element::generator_power(dyadic, 1);
    Element h = dyadic_element({3, -1});
    CHECK(dominates(Element(dyadic), g));
    CHECK(!dominates(g, h));  // fails on [1]
    CHECK(dominates(Element(dyadic), induced_generator(ClopenSet::cylinder(dyadic, {1, 0}))));

    testgen::Rng rng(61);
    for (int trial = 0; trial < 20; ++trial) {
        Element a = testgen::random_element(rng, dyadic, 2);
        Element b = testgen::random_element(rng, dyadic, 2);
        CHECK(dominates(a, b) == b.compose(a.inverse()).is_strongly_positive());
    }
}

TEST_CASE("mirror conjugates the group structure") {
    testgen::Rng rng(67);
    OdometerSystem sys = testgen::mixed();
    Element g = Element::generator_power(sys, 1);
    CHECK(g.mirror() == g.inverse());
    for (int trial = 0; trial < 30; ++trial) {
        Element a = testgen::random_element(rng, sys, 2);
        Element b = testgen::random_element(rng, sys, 2);
        CHECK(a.mirror().mirror() == a);
        CHECK(a.compose(b).mirror() == a.mirror().compose(b.mirror()));
        CHECK(a.inverse().mirror() == a.mirror().inverse());
    }
}

TEST_CASE("apply moves clopen sets exactly") {
    testgen::Rng rng(71);
    OdometerSystem sys = testgen::dyadic();
    for (int trial = 0; trial < 30; ++trial) {
        Element a = testgen::random_element(rng, sys, 3);
        ClopenSet s = testgen::random_set(rng, sys, 3);
        ClopenSet image = a.apply(s);
        CHECK(a.inverse().apply(image) == s);
        CHECK(image.measure() == s.measure());
    }
}
