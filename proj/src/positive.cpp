#include "tfg/positive.hpp"

#include <algorithm>
#include <set>

namespace tfg {

namespace {

int64_t floor_mod(int64_t a, int64_t m) {
    int64_t r = a % m;
    return r < 0 ? r + m : r;
}

std::vector<int64_t> inverse_step_table(int64_t size, const std::vector<int64_t>& table) {
    std::vector<int64_t> inv(static_cast<std::size_t>(size));
    for (int64_t w = 0; w < size; ++w)
        inv[static_cast<std::size_t>(floor_mod(w + table[static_cast<std::size_t>(w)], size))] = w;
    return inv;
}

}  // namespace

ClopenSet strongly_positive_domain(const Element& h, Orientation which) {
    if (which == Orientation::backward) {
        // Y_- of h equals the mirror of Y_+ of mirror(h)^{-1}: reflecting
        // exchanges the g-order with its reverse.
        return strongly_positive_domain(h.mirror().inverse(), Orientation::forward).mirror();
    }
    ensure(which == Orientation::forward, "strongly_positive_domain: unsupported orientation");
    if (!is_positive(h)) throw not_positive("strongly positive domain requires a positive element");
    CycleGraph g = cycle_graph(h);
    std::vector<int64_t> domain;
    for (const Cycle& c : g.cycles) {
        if (c.cls == CycleClass::periodic) {
            // Positive elements only have fixed points here; all cocycle
            // values vanish, so they belong.
            domain.insert(domain.end(), c.members.begin(), c.members.end());
            continue;
        }
        int64_t len = c.length();
        // Partial sums along the traversal, duplicated to read any window
        // of one loop: sums[i..i+len].
        std::vector<int64_t> weights(static_cast<std::size_t>(2 * len));
        for (int64_t i = 0; i < len; ++i) {
            int64_t w = c.members[static_cast<std::size_t>(i)];
            weights[static_cast<std::size_t>(i)] = weights[static_cast<std::size_t>(i + len)] =
                h.table()[static_cast<std::size_t>(w)];
        }
        for (int64_t i = 0; i < len; ++i) {
            int64_t acc = 0;
            bool ok = true;
            for (int64_t k = 0; k < len; ++k) {
                acc += weights[static_cast<std::size_t>(i + k)];
                if (acc < 0) { ok = false; break; }
            }
            if (ok) domain.push_back(c.members[static_cast<std::size_t>(i)]);
        }
    }
    return ClopenSet(h.system(), g.depth, std::move(domain));
}

Element positive_form(const Element& h) {
    CycleGraph g = cycle_graph(h);
    int64_t size = g.level.modulus;
    std::vector<int64_t> out(static_cast<std::size_t>(size), 0);
    for (const Cycle& c : g.cycles) {
        if (c.cls == CycleClass::periodic) continue;
        int64_t len = c.length();
        int64_t s = c.sum;
        // Partial sums along the loop: sums[r] = phi over r steps from the
        // traversal start; phi(qL + r) = qS + sums[r].
        std::vector<int64_t> sums(static_cast<std::size_t>(len + 1), 0);
        int64_t fluct = 0;
        for (int64_t r = 0; r < len; ++r) {
            sums[static_cast<std::size_t>(r + 1)] =
                sums[static_cast<std::size_t>(r)] +
                h.table()[static_cast<std::size_t>(c.members[static_cast<std::size_t>(r)])];
            fluct = std::max(fluct, std::abs(sums[static_cast<std::size_t>(r + 1)]));
        }
        // The least positive value is at most |S| (one full loop achieves
        // S), and any value in (0, |S|] occurs within |q| <= 2*fluct/|S|+1
        // loops, since phi(qL + r) = qS + sums[r] with |sums| <= fluct.
        int64_t abs_s = s < 0 ? -s : s;
        int64_t loops = 2 * fluct / abs_s + 2;
        for (int64_t i = 0; i < len; ++i) {
            int64_t base = sums[static_cast<std::size_t>(i)];
            int64_t best = 0;
            for (int64_t q = -loops; q <= loops; ++q) {
                for (int64_t r = 0; r < len; ++r) {
                    int64_t value = q * s + sums[static_cast<std::size_t>(r)] - base;
                    if (value > 0 && (best == 0 || value < best)) best = value;
                }
            }
            ensure(best > 0, "positive_form: no positive cocycle value in window");
            out[static_cast<std::size_t>(c.members[static_cast<std::size_t>(i)])] = best;
        }
    }
    Element result(h.system(), g.depth, std::move(out));
    ensure(result.is_strongly_positive(), "positive_form: result not strongly positive");
    // Same cycle-orbit structure on the aperiodic part: the successor map
    // traverses exactly the cylinders of each aperiodic cycle.
    std::set<std::vector<int64_t>> expect, got;
    for (const Cycle& c : g.cycles)
        if (c.cls != CycleClass::periodic) {
            std::vector<int64_t> m = c.members;
            std::sort(m.begin(), m.end());
            expect.insert(std::move(m));
        }
    for (const Cycle& c : decompose_cycles({size, result.table_at(g.depth)}))
        if (c.sum != 0) {
            ensure(c.cls == CycleClass::positive, "positive_form: negative residual cycle");
            std::vector<int64_t> m = c.members;
            std::sort(m.begin(), m.end());
            got.insert(std::move(m));
        }
    ensure(expect == got, "positive_form: orbit structure changed");
    return result;
}

namespace {

// delta(w, t) over t in [-window, window] staying >= 0, for all codes.
std::vector<bool> nonnegative_delta_codes(int64_t size, const std::vector<int64_t>& th,
                                          const std::vector<int64_t>& tp, int64_t window) {
    std::vector<int64_t> inv_h = inverse_step_table(size, th);
    std::vector<int64_t> inv_p = inverse_step_table(size, tp);
    std::vector<bool> ok(static_cast<std::size_t>(size), true);
    for (int64_t w = 0; w < size; ++w) {
        __int128 ah = 0, ap = 0;
        int64_t ph = w, pp = w;
        for (int64_t t = 1; t <= window && ok[static_cast<std::size_t>(w)]; ++t) {
            ah += th[static_cast<std::size_t>(ph)];
            ph = floor_mod(ph + th[static_cast<std::size_t>(ph)], size);
            ap += tp[static_cast<std::size_t>(pp)];
            pp = floor_mod(pp + tp[static_cast<std::size_t>(pp)], size);
            if (ah < ap) ok[static_cast<std::size_t>(w)] = false;
        }
        ph = w; pp = w; ah = 0; ap = 0;
        for (int64_t t = 1; t <= window && ok[static_cast<std::size_t>(w)]; ++t) {
            ph = inv_h[static_cast<std::size_t>(ph)];
            ah -= th[static_cast<std::size_t>(ph)];
            pp = inv_p[static_cast<std::size_t>(pp)];
            ap -= tp[static_cast<std::size_t>(pp)];
            if (ah < ap) ok[static_cast<std::size_t>(w)] = false;
        }
    }
    return ok;
}

// phi difference delta(v, s) = c_{g,h^s}(v) - c_{g,h'^s}(v) for one (v, s).
int64_t delta_at(int64_t size, const std::vector<int64_t>& th, const std::vector<int64_t>& tp,
                 const std::vector<int64_t>& inv_h, const std::vector<int64_t>& inv_p,
                 int64_t v, int64_t s) {
    __int128 ah = 0, ap = 0;
    int64_t ph = v, pp = v;
    if (s >= 0) {
        for (int64_t t = 0; t < s; ++t) {
            ah += th[static_cast<std::size_t>(ph)];
            ph = floor_mod(ph + th[static_cast<std::size_t>(ph)], size);
            ap += tp[static_cast<std::size_t>(pp)];
            pp = floor_mod(pp + tp[static_cast<std::size_t>(pp)], size);
        }
    } else {
        for (int64_t t = 0; t < -s; ++t) {
            ph = inv_h[static_cast<std::size_t>(ph)];
            ah -= th[static_cast<std::size_t>(ph)];
            pp = inv_p[static_cast<std::size_t>(pp)];
            ap -= tp[static_cast<std::size_t>(pp)];
        }
    }
    return static_cast<int64_t>(ah - ap);
}

}  // namespace

Element canonical_conjugator(const Element& h) {
    if (!is_positive(h)) throw not_positive("canonical conjugator requires a positive element");
    Element hp = positive_form(h);
    int64_t d = common_depth(h, hp);
    int64_t size = h.system().level_size(d);
    std::vector<int64_t> th = h.table_at(d), tp = hp.table_at(d);
    std::vector<int64_t> inv_h = inverse_step_table(size, th);
    std::vector<int64_t> inv_p = inverse_step_table(size, tp);

    for (int64_t window = std::max<int64_t>(size, 4); ; window *= 2) {
        ensure(window < (int64_t(1) << 40), "canonical_conjugator: window diverged");
        std::vector<bool> in_z = nonnegative_delta_codes(size, th, tp, window);
        std::vector<int64_t> table(static_cast<std::size_t>(size), 0);
        bool built = true;
        for (int64_t w = 0; w < size && built; ++w) {
            // Least |s| with h'^{-s}(cylinder) inside Z, preferring s >= 0;
            // s = 0 whenever w itself lies in Z, so k fixes all of Z.
            bool found = false;
            int64_t back = w, fwd = w;
            for (int64_t a = 0; a <= size && !found; ++a) {
                if (a > 0) {
                    back = inv_p[static_cast<std::size_t>(back)];
                    fwd = floor_mod(fwd + tp[static_cast<std::size_t>(fwd)], size);
                }
                if (in_z[static_cast<std::size_t>(back)]) {
                    table[static_cast<std::size_t>(w)] =
                        delta_at(size, th, tp, inv_h, inv_p, back, a);
                    found = true;
                } else if (a > 0 && in_z[static_cast<std::size_t>(fwd)]) {
                    table[static_cast<std::size_t>(w)] =
                        delta_at(size, th, tp, inv_h, inv_p, fwd, -a);
                    found = true;
                }
            }
            if (!found) built = false;
        }
        if (!built) continue;
        try {
            Element k(h.system(), d, table);
            if (!k.is_strongly_positive()) continue;
            if (k.compose(hp).compose(k.inverse()) == h) return k;
        } catch (const not_bijective&) {
            // Truncated window produced an inconsistent section; widen.
        }
    }
}

Element StrongSignForm::reconstruct() const {
    Element plus = positive_conjugator.compose(positive_core).compose(positive_conjugator.inverse());
    Element minus = negative_conjugator.compose(negative_core).compose(negative_conjugator.inverse());
    return periodic_factor.compose(plus).compose(minus);
}

StrongSignForm strong_sign_form(const Element& h) {
    SignPartition sp = sign_partition(h);
    const OdometerSystem& sys = h.system();
    StrongSignForm out{sp.periodic_factor, Element(sys), Element(sys), Element(sys), Element(sys)};
    if (!sp.positive_factor.is_identity()) {
        out.positive_core = positive_form(sp.positive_factor);
        out.positive_conjugator = canonical_conjugator(sp.positive_factor);
    }
    if (!sp.negative_factor.is_identity()) {
        Element mirrored = sp.negative_factor.mirror();
        out.negative_core = positive_form(mirrored).mirror();
        out.negative_conjugator = canonical_conjugator(mirrored).mirror();
    }
    ensure(out.positive_core.is_strongly_positive() && out.positive_conjugator.is_strongly_positive(),
           "strong sign form: positive factors not strongly positive");
    ensure(out.negative_core.is_strongly_negative() && out.negative_conjugator.is_strongly_negative(),
           "strong sign form: negative factors not strongly negative");
    ensure(out.reconstruct() == h, "strong sign form: reconstruction failed");
    return out;
}

GeneratorConjugacy generator_conjugacy(const Element& h) {
    GeneratorConjugacy out;
    Element g = Element::generator_power(h.system(), 1);
    if (positive_form(h) == g) {
        SignPartition sp = sign_partition(h);
        if (sp.negative_set.is_empty() && sp.periodic_set.is_empty()) {
            out.kind = GeneratorConjugacy::Kind::conjugate_of_g;
            out.conjugator = canonical_conjugator(h);
        } else if (sp.positive_set.is_empty() && sp.periodic_set.is_empty()) {
            out.kind = GeneratorConjugacy::Kind::conjugate_of_g_inverse;
            out.conjugator = canonical_conjugator(h.inverse());
        }
    }
    return out;
}

}  // namespace tfg
