#ifndef TFG_EXPR_HPP
#define TFG_EXPR_HPP

#include <memory>
#include <string>
#include <vector>

#include "tfg/rewrite.hpp"

namespace tfg {

// Source span of a node, as offsets into the parsed text.
struct Span {
    std::size_t pos = 0;
    std::size_t len = 0;
};

// Set expressions: cylinder literals combined with union (+),
// intersection (&) and complement (~).
struct SetExpr {
    enum class Kind { cylinder, whole_space, empty, set_union, set_intersection, complement };
    Kind kind = Kind::empty;
    Span span;
    std::vector<int64_t> digits;            // cylinder
    std::vector<std::unique_ptr<SetExpr>> children;
};

// Element/word expressions: `g`, `id`, `g_[digits]`, `g_(setexpr)`,
// parenthesized groups, `^` integer powers, and juxtaposition for
// composition with the rightmost factor applied first.
struct Expr {
    enum class Kind { gen, identity, induced, power, sequence, group };
    Kind kind = Kind::gen;
    Span span;
    std::unique_ptr<SetExpr> set;           // induced
    int64_t exponent = 0;                   // power
    std::vector<std::unique_ptr<Expr>> children;
};

// Throws parse_error (with a 0-based offset) on malformed input.
std::unique_ptr<Expr> parse_expression(const std::string& text);
std::unique_ptr<SetExpr> parse_set_expression(const std::string& text);

ClopenSet eval(const SetExpr& e, const OdometerSystem& sys);
Element eval(const Expr& e, const OdometerSystem& sys);

// The same expression as a word over {g_A} + {g, g^-1}; rejects inverses of
// induced tokens, which are not monoid generators.
GeneratorWord word_from(const Expr& e, const OdometerSystem& sys);

}  // namespace tfg

#endif
