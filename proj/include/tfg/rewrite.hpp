#ifndef TFG_REWRITE_HPP
#define TFG_REWRITE_HPP

#include <vector>

#include "tfg/orbit.hpp"

namespace tfg {

// The unique expression h = g_{A_n} ... g_{A_1} g^power with nested proper
// chain A_n <= ... <= A_1 < X.  chain[0] = A_1 (the outermost support).
struct NormalForm {
    OdometerSystem system;
    int64_t power = 0;
    std::vector<ClopenSet> chain;
};

// Peels induced transformations off h g^{-r} (r = least exponent): the
// residual stays strongly positive at every step and vanishes after exactly
// index(h) - r steps.
NormalForm normal_form(const Element& h);
Element evaluate(const NormalForm& nf);

// Irreducible in the monoid of strongly positive elements: equivalently an
// induced transformation of g.
bool is_irreducible(const Element& h);

// The unique clopen set with g_A g_B = g_{A*B} g_{A union B} and
// A*B inside A union B, read off the normal form of g_A g_B.
ClopenSet star(const ClopenSet& a, const ClopenSet& b);

// Words over the monoid generating set {g_A} + {g^{-1}}; `gen` denotes g
// itself (= g_X).  Tokens compose with the rightmost applied first.
struct WordToken {
    enum class Kind { gen, gen_inverse, induced };
    Kind kind = Kind::gen;
    ClopenSet set;  // meaningful for induced only

    bool operator==(const WordToken&) const = default;
};

struct GeneratorWord {
    OdometerSystem system;
    std::vector<WordToken> tokens;  // display order; tokens.back() applies first

    bool operator==(const GeneratorWord&) const = default;
};

Element evaluate(const GeneratorWord& word);

// One rewriting step at display position i, or false when not applicable:
//   push_inverse:  g^{-1} g_A -> g_{g^{-1}A} g^{-1}
//   nest_supports: g_A g_B -> g_{A*B} g_{A union B} for non-nested A, B
//   cancel:        g_X g^{-1} -> (empty)
// Each step preserves the evaluation.  nest_supports strictly decreases the
// right-to-left sequence of complement measures lexicographically (the
// right support grows to the union), which bounds every reduction run.
bool apply_push_inverse(GeneratorWord& word, std::size_t i);
bool apply_nest_supports(GeneratorWord& word, std::size_t i);
bool apply_cancel(GeneratorWord& word, std::size_t i);
bool is_reduced(const GeneratorWord& word);

// Normalizes g to g_X, pushes inverses right, nests supports, cancels
// g_X g^{-1} pairs.  The result is the unique reduced word of the element.
GeneratorWord reduce_word(const GeneratorWord& word);

// Same, recording the word after every individual rewrite step (the input,
// normalized, comes first and the reduced word last).
std::vector<GeneratorWord> reduce_word_trace(const GeneratorWord& word);

// A finite-order element cyclically permuting length disjoint translates of
// its base, with constant cocycle on each translate.  signature[i] is the
// cocycle value on h^i(base); it sums to zero and all of its cyclic
// rotations are distinct.
struct PureCycle {
    ClopenSet base;
    int64_t length = 0;
    std::vector<int64_t> signature;
};

Element to_element(const PureCycle& c);

// The unique decomposition of a pointwise periodic element into pure cycles
// with pairwise disjoint supports and pairwise distinct signatures.  Codes
// group by their linear signature, signatures by cyclic rotation; the base
// of each class is the signature class holding the least code.  Throws
// not_periodic unless every orbit is finite.
std::vector<PureCycle> pure_cycle_decomposition(const Element& h);

// A <= B in the support order (= inclusion; the commutation description of
// the same order is exercised by tests, not used as the implementation).
bool support_order_le(const ClopenSet& a, const ClopenSet& b);

// Partition of the period-n part into layers cycled by h: layer 0 collects
// the least code of every zero-sum n-cycle, layer i its i-th image.
// Throws not_periodic when the period-n part is empty.
std::vector<ClopenSet> periodic_layers(const Element& h, int64_t n);

}  // namespace tfg

#endif
