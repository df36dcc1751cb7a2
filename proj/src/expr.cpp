#include "tfg/expr.hpp"

#include <cctype>

namespace tfg {

namespace {

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    std::unique_ptr<Expr> expression_toplevel() {
        skip_space();
        auto e = sequence();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected trailing input", pos_);
        return e;
    }

    std::unique_ptr<SetExpr> set_toplevel() {
        skip_space();
        auto e = set_union();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected trailing input", pos_);
        return e;
    }

private:
    const std::string& text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
        throw parse_error(msg, at);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_space();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool accept(char c) {
        if (!peek(c)) return false;
        ++pos_;
        return true;
    }

    void expect(char c, const char* what) {
        if (!accept(c)) fail(std::string("expected '") + c + "' " + what, pos_);
    }

    bool keyword(const char* word) {
        skip_space();
        std::size_t len = std::string(word).size();
        if (text_.compare(pos_, len, word) != 0) return false;
        std::size_t end = pos_ + len;
        if (end < text_.size() &&
            (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
            return false;
        pos_ = end;
        return true;
    }

    int64_t integer() {
        skip_space();
        std::size_t start = pos_;
        bool neg = accept('-');
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail("expected an integer", start);
        int64_t value = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            value = value * 10 + (text_[pos_++] - '0');
        return neg ? -value : value;
    }

    // [d1 d2 ... dD]; single characters unless separated by commas/spaces.
    std::unique_ptr<SetExpr> cylinder() {
        skip_space();
        std::size_t open = pos_;
        expect('[', "to open a cylinder literal");
        auto node = std::make_unique<SetExpr>();
        node->span.pos = open;
        bool separated = false;
        {
            std::size_t probe = pos_;
            while (probe < text_.size() && text_[probe] != ']') {
                if (text_[probe] == ',' || text_[probe] == ' ') separated = true;
                ++probe;
            }
        }
        while (true) {
            skip_space();
            if (pos_ >= text_.size()) fail("unterminated cylinder literal", open);
            if (text_[pos_] == ']') { ++pos_; break; }
            if (text_[pos_] == ',') { ++pos_; continue; }
            if (!std::isdigit(static_cast<unsigned char>(text_[pos_])))
                fail("expected a digit in cylinder literal", pos_);
            if (separated) {
                int64_t d = 0;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    d = d * 10 + (text_[pos_++] - '0');
                node->digits.push_back(d);
            } else {
                node->digits.push_back(text_[pos_++] - '0');
            }
        }
        node->kind = node->digits.empty() ? SetExpr::Kind::whole_space : SetExpr::Kind::cylinder;
        node->span.len = pos_ - open;
        return node;
    }

    std::unique_ptr<SetExpr> set_factor() {
        skip_space();
        std::size_t start = pos_;
        if (accept('~')) {
            auto node = std::make_unique<SetExpr>();
            node->kind = SetExpr::Kind::complement;
            node->span.pos = start;
            node->children.push_back(set_factor());
            node->span.len = pos_ - start;
            return node;
        }
        if (peek('(')) {
            ++pos_;
            auto inner = set_union();
            expect(')', "to close a set expression");
            return inner;
        }
        if (keyword("empty")) {
            auto node = std::make_unique<SetExpr>();
            node->kind = SetExpr::Kind::empty;
            node->span = {start, pos_ - start};
            return node;
        }
        if (peek('[')) return cylinder();
        fail("expected a set expression", pos_);
    }

    std::unique_ptr<SetExpr> set_intersection() {
        std::size_t start = pos_;
        auto left = set_factor();
        while (peek('&')) {
            ++pos_;
            auto node = std::make_unique<SetExpr>();
            node->kind = SetExpr::Kind::set_intersection;
            node->span.pos = start;
            node->children.push_back(std::move(left));
            node->children.push_back(set_factor());
            node->span.len = pos_ - start;
            left = std::move(node);
        }
        return left;
    }

    std::unique_ptr<SetExpr> set_union() {
        std::size_t start = pos_;
        auto left = set_intersection();
        while (peek('+')) {
            ++pos_;
            auto node = std::make_unique<SetExpr>();
            node->kind = SetExpr::Kind::set_union;
            node->span.pos = start;
            node->children.push_back(std::move(left));
            node->children.push_back(set_intersection());
            node->span.len = pos_ - start;
            left = std::move(node);
        }
        return left;
    }

    std::unique_ptr<Expr> atom() {
        skip_space();
        std::size_t start = pos_;
        if (keyword("id")) {
            auto node = std::make_unique<Expr>();
            node->kind = Expr::Kind::identity;
            node->span = {start, pos_ - start};
            return node;
        }
        // 'g' may be followed by '_', which keyword() treats as part of an
        // identifier; match it directly.
        skip_space();
        start = pos_;
        if (pos_ < text_.size() && text_[pos_] == 'g' &&
            (pos_ + 1 >= text_.size() ||
             !std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])))) {
            ++pos_;
            auto node = std::make_unique<Expr>();
            node->span.pos = start;
            if (accept('_')) {
                node->kind = Expr::Kind::induced;
                if (peek('(')) {
                    ++pos_;
                    node->set = set_union();
                    expect(')', "to close the induced set");
                } else if (peek('[')) {
                    node->set = cylinder();
                } else {
                    fail("expected a set after 'g_'", pos_);
                }
            } else {
                node->kind = Expr::Kind::gen;
            }
            node->span.len = pos_ - start;
            return node;
        }
        if (peek('(')) {
            ++pos_;
            auto node = std::make_unique<Expr>();
            node->kind = Expr::Kind::group;
            node->span.pos = start;
            node->children.push_back(sequence());
            expect(')', "to close a group");
            node->span.len = pos_ - start;
            return node;
        }
        fail("expected 'g', 'id' or '('", pos_);
    }

    std::unique_ptr<Expr> term() {
        std::size_t start = pos_;
        auto base = atom();
        if (peek('^')) {
            ++pos_;
            auto node = std::make_unique<Expr>();
            node->kind = Expr::Kind::power;
            node->span.pos = start;
            node->exponent = integer();
            node->children.push_back(std::move(base));
            node->span.len = pos_ - start;
            return node;
        }
        return base;
    }

    std::unique_ptr<Expr> sequence() {
        std::size_t start = pos_;
        auto node = std::make_unique<Expr>();
        node->kind = Expr::Kind::sequence;
        node->span.pos = start;
        node->children.push_back(term());
        while (true) {
            skip_space();
            if (pos_ >= text_.size()) break;
            char c = text_[pos_];
            if (c == ')' ) break;
            if (c == 'g' || c == 'i' || c == '(') {
                node->children.push_back(term());
            } else {
                break;
            }
        }
        node->span.len = pos_ - start;
        if (node->children.size() == 1) return std::move(node->children.front());
        return node;
    }
};

}  // namespace

std::unique_ptr<Expr> parse_expression(const std::string& text) {
    return Parser(text).expression_toplevel();
}

std::unique_ptr<SetExpr> parse_set_expression(const std::string& text) {
    return Parser(text).set_toplevel();
}

ClopenSet eval(const SetExpr& e, const OdometerSystem& sys) {
    switch (e.kind) {
        case SetExpr::Kind::empty: return ClopenSet(sys);
        case SetExpr::Kind::whole_space: return ClopenSet::whole_space(sys);
        case SetExpr::Kind::cylinder: {
            int64_t depth = static_cast<int64_t>(e.digits.size());
            sys.level_size(depth);
            return ClopenSet::cylinder(sys, {depth, digits_code(sys, e.digits)});
        }
        case SetExpr::Kind::set_union:
            return eval(*e.children[0], sys).union_with(eval(*e.children[1], sys));
        case SetExpr::Kind::set_intersection:
            return eval(*e.children[0], sys).intersect(eval(*e.children[1], sys));
        case SetExpr::Kind::complement: return eval(*e.children[0], sys).complement();
    }
    throw internal_error("unhandled set expression kind");
}

Element eval(const Expr& e, const OdometerSystem& sys) {
    switch (e.kind) {
        case Expr::Kind::gen: return Element::generator_power(sys, 1);
        case Expr::Kind::identity: return Element(sys);
        case Expr::Kind::induced: {
            ClopenSet a = eval(*e.set, sys);
            if (a.is_empty()) throw empty_set_error("induced transformation of the empty set");
            return induced_generator(a);
        }
        case Expr::Kind::power: return eval(*e.children[0], sys).power(e.exponent);
        case Expr::Kind::group: return eval(*e.children[0], sys);
        case Expr::Kind::sequence: {
            Element acc(sys);
            for (auto it = e.children.rbegin(); it != e.children.rend(); ++it)
                acc = eval(**it, sys).compose(acc);
            return acc;
        }
    }
    throw internal_error("unhandled expression kind");
}

namespace {

void append_word(const Expr& e, const OdometerSystem& sys, GeneratorWord& out) {
    switch (e.kind) {
        case Expr::Kind::gen:
            out.tokens.push_back({WordToken::Kind::gen, ClopenSet(sys)});
            return;
        case Expr::Kind::identity:
            return;
        case Expr::Kind::induced: {
            ClopenSet a = eval(*e.set, sys);
            if (a.is_empty()) throw empty_set_error("induced transformation of the empty set");
            out.tokens.push_back({WordToken::Kind::induced, std::move(a)});
            return;
        }
        case Expr::Kind::power: {
            const Expr& base = *e.children[0];
            if (e.exponent == 0) return;
            if (e.exponent < 0) {
                if (base.kind == Expr::Kind::gen) {
                    for (int64_t i = 0; i < -e.exponent; ++i)
                        out.tokens.push_back({WordToken::Kind::gen_inverse, ClopenSet(sys)});
                    return;
                }
                throw input_error(
                    "only g may carry a negative power in a generator word");
            }
            for (int64_t i = 0; i < e.exponent; ++i) append_word(base, sys, out);
            return;
        }
        case Expr::Kind::group:
            append_word(*e.children[0], sys, out);
            return;
        case Expr::Kind::sequence:
            for (const auto& child : e.children) append_word(*child, sys, out);
            return;
    }
    throw internal_error("unhandled expression kind");
}

}  // namespace

GeneratorWord word_from(const Expr& e, const OdometerSystem& sys) {
    GeneratorWord word{sys, {}};
    append_word(e, sys, word);
    return word;
}

}  // namespace tfg
