#include "tfg/rewrite.hpp"

#include <algorithm>
#include <map>

namespace tfg {

NormalForm normal_form(const Element& h) {
    NormalForm nf{h.system(), 0, {}};
    nf.power = *std::min_element(h.table().begin(), h.table().end());
    Element residual = h.compose(Element::generator_power(h.system(), -nf.power));
    ensure(residual.is_strongly_positive(), "normal_form: residual not strongly positive");
    int64_t steps = index_of(h) - nf.power;
    for (int64_t i = 0; i < steps; ++i) {
        ClopenSet a = residual.support();
        ensure(!a.is_empty(), "normal_form: support vanished early");
        if (!nf.chain.empty())
            ensure(a.subset_of(nf.chain.back()), "normal_form: chain not nested");
        residual = residual.compose(induced_generator(a).inverse());
        ensure(residual.is_strongly_positive(), "normal_form: peeling left the monoid");
        nf.chain.push_back(std::move(a));
    }
    ensure(residual.is_identity(), "normal_form: nonzero residual after index - r steps");
    ensure(nf.chain.empty() || !nf.chain.front().is_whole_space(),
           "normal_form: chain head must be proper");
    return nf;
}

Element evaluate(const NormalForm& nf) {
    Element acc = Element::generator_power(nf.system, nf.power);
    for (const ClopenSet& a : nf.chain) acc = induced_generator(a).compose(acc);
    return acc;
}

bool is_irreducible(const Element& h) {
    return h.is_strongly_positive() && !h.is_identity() && index_of(h) == 1;
}

ClopenSet star(const ClopenSet& a, const ClopenSet& b) {
    if (a.is_empty() || b.is_empty()) throw empty_set_error("star of an empty set");
    ClopenSet all = a.union_with(b);
    NormalForm nf = normal_form(induced_generator(a).compose(induced_generator(b)));
    // Index 2 leaves three shapes, depending on how much of the chain the
    // properness constraint folded into the trailing power of g.
    switch (nf.chain.size()) {
        case 2:
            ensure(nf.power == 0 && nf.chain[0] == all, "star: unexpected normal form");
            return nf.chain[1];
        case 1:
            ensure(nf.power == 1 && all.is_whole_space(), "star: unexpected normal form");
            return nf.chain[0];
        default:
            ensure(nf.chain.empty() && nf.power == 2 && all.is_whole_space(),
                   "star: unexpected normal form");
            return all;  // X
    }
}

Element evaluate(const GeneratorWord& word) {
    Element acc(word.system);
    Element g = Element::generator_power(word.system, 1);
    for (auto it = word.tokens.rbegin(); it != word.tokens.rend(); ++it) {
        switch (it->kind) {
            case WordToken::Kind::gen: acc = g.compose(acc); break;
            case WordToken::Kind::gen_inverse: acc = g.inverse().compose(acc); break;
            case WordToken::Kind::induced:
                if (it->set.is_empty()) throw empty_set_error("induced token over the empty set");
                acc = induced_generator(it->set).compose(acc);
                break;
        }
    }
    return acc;
}

bool apply_push_inverse(GeneratorWord& word, std::size_t i) {
    if (i + 1 >= word.tokens.size()) return false;
    WordToken& left = word.tokens[i];
    WordToken& right = word.tokens[i + 1];
    if (left.kind != WordToken::Kind::gen_inverse || right.kind != WordToken::Kind::induced)
        return false;
    ClopenSet shifted = right.set.translate(-1);
    left = WordToken{WordToken::Kind::induced, std::move(shifted)};
    right = WordToken{WordToken::Kind::gen_inverse, ClopenSet(word.system)};
    return true;
}

bool apply_nest_supports(GeneratorWord& word, std::size_t i) {
    if (i + 1 >= word.tokens.size()) return false;
    WordToken& left = word.tokens[i];
    WordToken& right = word.tokens[i + 1];
    if (left.kind != WordToken::Kind::induced || right.kind != WordToken::Kind::induced)
        return false;
    if (left.set.subset_of(right.set)) return false;  // already nested
    ClopenSet united = left.set.union_with(right.set);
    ClopenSet starred = star(left.set, right.set);
    left.set = std::move(starred);
    right.set = std::move(united);
    return true;
}

bool apply_cancel(GeneratorWord& word, std::size_t i) {
    if (i + 1 >= word.tokens.size()) return false;
    const WordToken& left = word.tokens[i];
    const WordToken& right = word.tokens[i + 1];
    if (left.kind != WordToken::Kind::induced || !left.set.is_whole_space()) return false;
    if (right.kind != WordToken::Kind::gen_inverse) return false;
    word.tokens.erase(word.tokens.begin() + static_cast<std::ptrdiff_t>(i),
                      word.tokens.begin() + static_cast<std::ptrdiff_t>(i) + 2);
    return true;
}

namespace {

GeneratorWord normalize_gens(const GeneratorWord& word) {
    GeneratorWord out{word.system, {}};
    for (const WordToken& t : word.tokens) {
        if (t.kind == WordToken::Kind::gen)
            out.tokens.push_back(
                {WordToken::Kind::induced, ClopenSet::whole_space(word.system)});
        else
            out.tokens.push_back(t);
    }
    return out;
}

// Right-to-left complement measures, the termination metric for nesting.
std::vector<std::pair<int64_t, int64_t>> nesting_metric(const GeneratorWord& word) {
    std::vector<std::pair<int64_t, int64_t>> metric;
    for (auto it = word.tokens.rbegin(); it != word.tokens.rend(); ++it) {
        if (it->kind != WordToken::Kind::induced) continue;
        auto [num, den] = it->set.measure();
        metric.emplace_back(den - num, den);  // complement measure (den-num)/den
    }
    return metric;
}

bool metric_less(const std::vector<std::pair<int64_t, int64_t>>& a,
                 const std::vector<std::pair<int64_t, int64_t>>& b) {
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        // Compare fractions a[i] vs b[i] by cross-multiplication.
        __int128 lhs = static_cast<__int128>(a[i].first) * b[i].second;
        __int128 rhs = static_cast<__int128>(b[i].first) * a[i].second;
        if (lhs != rhs) return lhs < rhs;
    }
    return a.size() < b.size();
}

std::vector<GeneratorWord> reduce_steps(const GeneratorWord& input, bool keep_trace) {
    std::vector<GeneratorWord> trace;
    GeneratorWord word = normalize_gens(input);
    trace.push_back(word);
    auto record = [&](const GeneratorWord& w) {
        if (keep_trace)
            trace.push_back(w);
        else
            trace.back() = w;
    };
    // Phase 1: move every g^{-1} to the right of all induced tokens.
    for (bool moved = true; moved;) {
        moved = false;
        for (std::size_t i = 0; i + 1 < word.tokens.size(); ++i) {
            if (apply_push_inverse(word, i)) {
                record(word);
                moved = true;
            }
        }
    }
    // Phase 2: nest adjacent induced supports, leftmost violation first.
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i + 1 < word.tokens.size(); ++i) {
            auto before = nesting_metric(word);
            if (apply_nest_supports(word, i)) {
                ensure(metric_less(nesting_metric(word), before),
                       "reduce_word: nesting metric failed to decrease");
                record(word);
                changed = true;
                break;
            }
        }
    }
    // Phase 3: cancel g_X g^{-1} pairs at the junction.
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i + 1 < word.tokens.size(); ++i) {
            if (apply_cancel(word, i)) {
                record(word);
                changed = true;
                break;
            }
        }
    }
    ensure(is_reduced(word), "reduce_word: result not reduced");
    if (!keep_trace) trace.back() = word;
    return trace;
}

}  // namespace

bool is_reduced(const GeneratorWord& word) {
    for (std::size_t i = 0; i < word.tokens.size(); ++i) {
        const WordToken& t = word.tokens[i];
        if (t.kind == WordToken::Kind::gen) return false;
        if (i + 1 == word.tokens.size()) continue;
        const WordToken& next = word.tokens[i + 1];
        if (t.kind == WordToken::Kind::gen_inverse && next.kind == WordToken::Kind::induced)
            return false;
        if (t.kind == WordToken::Kind::induced && next.kind == WordToken::Kind::induced &&
            !t.set.subset_of(next.set))
            return false;
        if (t.kind == WordToken::Kind::induced && t.set.is_whole_space() &&
            next.kind == WordToken::Kind::gen_inverse)
            return false;
    }
    return true;
}

GeneratorWord reduce_word(const GeneratorWord& word) {
    return reduce_steps(word, false).back();
}

std::vector<GeneratorWord> reduce_word_trace(const GeneratorWord& word) {
    return reduce_steps(word, true);
}

Element to_element(const PureCycle& c) {
    const OdometerSystem& sys = c.base.system();
    int64_t depth = c.base.depth();
    int64_t size = sys.level_size(depth);
    std::vector<int64_t> table(static_cast<std::size_t>(size), 0);
    ClopenSet part = c.base;
    for (int64_t i = 0; i < c.length; ++i) {
        for (int64_t w : part.codes_at(depth))
            table[static_cast<std::size_t>(w)] = c.signature[static_cast<std::size_t>(i)];
        part = part.translate(c.signature[static_cast<std::size_t>(i)]);
    }
    ensure(part == c.base, "pure cycle signature does not close up");
    return Element(sys, depth, std::move(table));
}

std::vector<PureCycle> pure_cycle_decomposition(const Element& h) {
    CycleGraph g = cycle_graph(h);
    for (const Cycle& c : g.cycles)
        if (c.cls != CycleClass::periodic)
            throw not_periodic("pure cycle decomposition requires a pointwise periodic element");

    // Linear signature per code; classes of equal signatures, then classes
    // of signatures up to rotation.
    std::map<std::vector<int64_t>, std::vector<int64_t>> linear_classes;
    for (const Cycle& c : g.cycles) {
        int64_t len = c.length();
        for (int64_t i = 0; i < len; ++i) {
            std::vector<int64_t> sig;
            sig.reserve(static_cast<std::size_t>(len));
            for (int64_t k = 0; k < len; ++k)
                sig.push_back(h.table()[static_cast<std::size_t>(
                    c.members[static_cast<std::size_t>((i + k) % len)])]);
            linear_classes[std::move(sig)].push_back(c.members[static_cast<std::size_t>(i)]);
        }
    }
    auto least_rotation = [](const std::vector<int64_t>& sig) {
        std::vector<int64_t> best = sig;
        std::vector<int64_t> rot = sig;
        for (std::size_t i = 1; i < sig.size(); ++i) {
            std::rotate(rot.begin(), rot.begin() + 1, rot.end());
            if (rot < best) best = rot;
        }
        return best;
    };
    std::map<std::vector<int64_t>, std::vector<const std::pair<const std::vector<int64_t>,
                                                               std::vector<int64_t>>*>>
        rotation_classes;
    for (const auto& entry : linear_classes)
        rotation_classes[least_rotation(entry.first)].push_back(&entry);

    std::vector<PureCycle> out;
    for (const auto& [key, members] : rotation_classes) {
        if (key.size() == 1 && key[0] == 0) continue;  // fixed points
        // Base: the linear class containing the least code overall.
        const auto* base_entry = members.front();
        int64_t least = base_entry->second.front();
        for (const auto* e : members) {
            int64_t m = *std::min_element(e->second.begin(), e->second.end());
            if (m < least) {
                least = m;
                base_entry = e;
            }
        }
        PureCycle pc;
        pc.base = ClopenSet(h.system(), g.depth, base_entry->second);
        pc.length = static_cast<int64_t>(base_entry->first.size());
        pc.signature = base_entry->first;
        out.push_back(std::move(pc));
    }
    // Deterministic order: by least code of the base.
    std::sort(out.begin(), out.end(), [&](const PureCycle& a, const PureCycle& b) {
        return a.base.codes_at(g.depth).front() < b.base.codes_at(g.depth).front();
    });
    // Uniqueness guarantees: distinct signatures up to rotation by
    // construction, all rotations of each signature distinct (a repeated
    // rotation would close the code cycle early), supports disjoint, and
    // the product recomposes h.
    Element product(h.system());
    ClopenSet seen(h.system());
    for (const PureCycle& pc : out) {
        std::vector<int64_t> rot = pc.signature;
        for (std::size_t i = 1; i < pc.signature.size(); ++i) {
            std::rotate(rot.begin(), rot.begin() + 1, rot.end());
            ensure(rot != pc.signature, "pure cycle signature has a repeated rotation");
        }
        Element piece = to_element(pc);
        ensure(seen.intersect(piece.support()).is_empty(), "pure cycle supports overlap");
        seen = seen.union_with(piece.support());
        product = piece.compose(product);
    }
    ensure(product == h, "pure cycles do not recompose the element");
    return out;
}

bool support_order_le(const ClopenSet& a, const ClopenSet& b) {
    if (a.is_empty() || b.is_empty())
        throw empty_set_error("support order compares nonempty sets");
    return a.subset_of(b);
}

std::vector<ClopenSet> periodic_layers(const Element& h, int64_t n) {
    CycleGraph g = cycle_graph(h);
    std::vector<std::vector<int64_t>> layers(static_cast<std::size_t>(n));
    bool any = false;
    for (const Cycle& c : g.cycles) {
        if (c.cls != CycleClass::periodic || c.length() != n) continue;
        any = true;
        // members starts at the least code of the cycle; follow the
        // traversal to place layer i.
        for (int64_t i = 0; i < n; ++i)
            layers[static_cast<std::size_t>(i)].push_back(c.members[static_cast<std::size_t>(i)]);
    }
    if (!any) throw not_periodic("no orbits of period " + std::to_string(n));
    std::vector<ClopenSet> out;
    out.reserve(static_cast<std::size_t>(n));
    for (auto& codes : layers) out.emplace_back(h.system(), g.depth, std::move(codes));
    return out;
}

}  // namespace tfg
