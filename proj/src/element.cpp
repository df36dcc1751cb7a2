#include "tfg/element.hpp"

#include <algorithm>
#include <string>

namespace tfg {

namespace {

int64_t floor_mod(int64_t a, int64_t m) {
    int64_t r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

Element::Element(OdometerSystem sys) : system_(std::move(sys)), depth_(0), table_{0} {}

Element::Element(OdometerSystem sys, int64_t depth, std::vector<int64_t> table)
    : system_(std::move(sys)), depth_(depth), table_(std::move(table)) {
    validate_and_canonicalize();
}

Element Element::generator_power(OdometerSystem sys, int64_t t) {
    return Element(std::move(sys), 0, {t});
}

void Element::validate_and_canonicalize() {
    int64_t size = system_.level_size(depth_);
    if (static_cast<int64_t>(table_.size()) != size)
        throw code_out_of_range("exponent table has " + std::to_string(table_.size()) +
                                " entries, expected " + std::to_string(size));
    std::vector<int64_t> hit(static_cast<std::size_t>(size), -1);
    for (int64_t w = 0; w < size; ++w) {
        int64_t target = floor_mod(w + table_[static_cast<std::size_t>(w)], size);
        if (hit[static_cast<std::size_t>(target)] >= 0)
            throw not_bijective("codes " + std::to_string(hit[static_cast<std::size_t>(target)]) +
                                    " and " + std::to_string(w) + " collide at " +
                                    std::to_string(target),
                                hit[static_cast<std::size_t>(target)], w);
        hit[static_cast<std::size_t>(target)] = w;
    }
    // Depth reduction: all children of every parent share one exponent.
    while (depth_ > 0) {
        int64_t parent_size = system_.level_size(depth_ - 1);
        int64_t branch = system_.base_at(depth_);
        bool reducible = true;
        for (int64_t p = 0; p < parent_size && reducible; ++p)
            for (int64_t j = 1; j < branch; ++j)
                if (table_[static_cast<std::size_t>(p + j * parent_size)] !=
                    table_[static_cast<std::size_t>(p)]) {
                    reducible = false;
                    break;
                }
        if (!reducible) break;
        table_.resize(static_cast<std::size_t>(parent_size));
        --depth_;
    }
}

bool Element::is_strongly_positive() const {
    return std::all_of(table_.begin(), table_.end(), [](int64_t n) { return n >= 0; });
}

bool Element::is_strongly_negative() const {
    return std::all_of(table_.begin(), table_.end(), [](int64_t n) { return n <= 0; });
}

int64_t Element::norm() const {
    int64_t m = 0;
    for (int64_t n : table_) m = std::max(m, n < 0 ? -n : n);
    return m;
}

int64_t Element::exponent_at(int64_t depth, int64_t code) const {
    if (depth < depth_) throw internal_error("exponent_at: depth below native depth");
    return table_[static_cast<std::size_t>(code % system_.level_size(depth_))];
}

std::vector<int64_t> Element::table_at(int64_t depth) const {
    if (depth < depth_) throw internal_error("table_at: refinement depth below native depth");
    int64_t own = system_.level_size(depth_);
    int64_t size = system_.level_size(depth);
    std::vector<int64_t> out(static_cast<std::size_t>(size));
    for (int64_t w = 0; w < size; ++w) out[static_cast<std::size_t>(w)] = table_[static_cast<std::size_t>(w % own)];
    return out;
}

int64_t common_depth(const Element& a, const Element& b) {
    if (!(a.system() == b.system()))
        throw system_mismatch("elements over different odometer systems");
    return std::max(a.depth(), b.depth());
}

Element Element::compose(const Element& rhs) const {
    int64_t d = common_depth(*this, rhs);
    int64_t size = system_.level_size(d);
    std::vector<int64_t> a = table_at(d), b = rhs.table_at(d);
    std::vector<int64_t> out(static_cast<std::size_t>(size));
    for (int64_t w = 0; w < size; ++w) {
        int64_t mid = floor_mod(w + b[static_cast<std::size_t>(w)], size);
        out[static_cast<std::size_t>(w)] = a[static_cast<std::size_t>(mid)] + b[static_cast<std::size_t>(w)];
    }
    return Element(system_, d, std::move(out));
}

Element Element::inverse() const {
    int64_t size = system_.level_size(depth_);
    std::vector<int64_t> out(static_cast<std::size_t>(size));
    for (int64_t w = 0; w < size; ++w) {
        int64_t target = floor_mod(w + table_[static_cast<std::size_t>(w)], size);
        out[static_cast<std::size_t>(target)] = -table_[static_cast<std::size_t>(w)];
    }
    return Element(system_, depth_, std::move(out));
}

Element Element::power(int64_t t) const {
    if (t == 0) return Element(system_);
    Element base = t > 0 ? *this : inverse();
    int64_t k = t > 0 ? t : -t;
    if (k <= 8) {
        Element acc = base;
        for (int64_t i = 1; i < k; ++i) acc = acc.compose(base);
        return acc;
    }
    // Depth never grows under compose, so squaring costs O(B_D) per multiply.
    Element acc(system_);
    Element sq = base;
    while (k > 0) {
        if (k & 1) acc = acc.compose(sq);
        k >>= 1;
        if (k > 0) sq = sq.compose(sq);
    }
    return acc;
}

Element Element::conjugate(const Element& h) const {
    return compose(h).compose(inverse());
}

ClopenSet Element::apply(const ClopenSet& a) const {
    if (!(system_ == a.system()))
        throw system_mismatch("element and clopen set over different systems");
    int64_t d = std::max(depth_, a.depth());
    int64_t size = system_.level_size(d);
    std::vector<int64_t> tab = table_at(d);
    std::vector<int64_t> out;
    for (int64_t w : a.codes_at(d)) out.push_back(floor_mod(w + tab[static_cast<std::size_t>(w)], size));
    return ClopenSet(system_, d, std::move(out));
}

ClopenSet Element::support() const {
    std::vector<int64_t> codes;
    for (int64_t w = 0; w < static_cast<int64_t>(table_.size()); ++w)
        if (table_[static_cast<std::size_t>(w)] != 0) codes.push_back(w);
    return ClopenSet(system_, depth_, std::move(codes));
}

Element Element::restrict_to(const ClopenSet& a) const {
    if (!(system_ == a.system()))
        throw system_mismatch("element and clopen set over different systems");
    int64_t d = std::max(depth_, a.depth());
    int64_t size = system_.level_size(d);
    std::vector<int64_t> tab = table_at(d);
    std::vector<int64_t> codes = a.codes_at(d);
    std::vector<int64_t> out(static_cast<std::size_t>(size), 0);
    for (int64_t w : codes) {
        int64_t target = floor_mod(w + tab[static_cast<std::size_t>(w)], size);
        if (!std::binary_search(codes.begin(), codes.end(), target))
            throw internal_error("restrict_to: set is not invariant under the element");
        out[static_cast<std::size_t>(w)] = tab[static_cast<std::size_t>(w)];
    }
    return Element(system_, d, std::move(out));
}

Element Element::mirror() const {
    int64_t size = system_.level_size(depth_);
    std::vector<int64_t> out(static_cast<std::size_t>(size));
    for (int64_t w = 0; w < size; ++w)
        out[static_cast<std::size_t>(size - 1 - w)] = -table_[static_cast<std::size_t>(w)];
    return Element(system_, depth_, std::move(out));
}

Element induced_generator(const ClopenSet& a) {
    if (a.is_empty()) throw empty_set_error("induced transformation of the empty set");
    int64_t size = a.system().level_size(a.depth());
    const std::vector<int64_t>& codes = a.codes();
    std::vector<int64_t> out(static_cast<std::size_t>(size), 0);
    for (int64_t w : codes) {
        int64_t t = 1;
        while (!std::binary_search(codes.begin(), codes.end(), (w + t) % size)) ++t;
        out[static_cast<std::size_t>(w)] = t;
    }
    return Element(a.system(), a.depth(), std::move(out));
}

Element induced_element(const Element& h, const ClopenSet& a) {
    if (a.is_empty()) throw empty_set_error("induced transformation on the empty set");
    if (!(h.system() == a.system()))
        throw system_mismatch("element and clopen set over different systems");
    int64_t d = std::max(h.depth(), a.depth());
    int64_t size = h.system().level_size(d);
    std::vector<int64_t> tab = h.table_at(d);
    std::vector<int64_t> codes = a.codes_at(d);
    std::vector<int64_t> out(static_cast<std::size_t>(size), 0);
    for (int64_t w : codes) {
        int64_t pos = w, sum = 0, steps = 0;
        do {
            sum += tab[static_cast<std::size_t>(pos)];
            pos = floor_mod(pos + tab[static_cast<std::size_t>(pos)], size);
            if (++steps > size) throw internal_error("induced_element: no return within B_D steps");
        } while (!std::binary_search(codes.begin(), codes.end(), pos));
        out[static_cast<std::size_t>(w)] = sum;
    }
    return Element(h.system(), d, std::move(out));
}

bool dominates(const Element& a, const Element& b) {
    int64_t d = common_depth(a, b);
    std::vector<int64_t> ta = a.table_at(d), tb = b.table_at(d);
    for (std::size_t i = 0; i < ta.size(); ++i)
        if (ta[i] > tb[i]) return false;
    return true;
}

}  // namespace tfg
