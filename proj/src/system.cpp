#include "tfg/system.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace tfg {

namespace {

// Tables are materialized as vectors indexed by code, so keep levels well
// inside addressable range.
constexpr int64_t kMaxLevelSize = int64_t(1) << 26;

int64_t checked_mul(int64_t a, int64_t b) {
    if (a > kMaxLevelSize / b)
        throw depth_overflow("level size exceeds supported range");
    return a * b;
}

bool is_repetition(const std::vector<int64_t>& word, std::size_t block) {
    if (word.size() % block != 0) return false;
    for (std::size_t i = block; i < word.size(); ++i)
        if (word[i] != word[i - block]) return false;
    return true;
}

}  // namespace

OdometerSystem::OdometerSystem(std::vector<int64_t> preperiod, std::vector<int64_t> period)
    : preperiod_(std::move(preperiod)), period_(std::move(period)) {
    if (period_.empty()) throw input_error("odometer period must be nonempty");
    for (int64_t b : preperiod_)
        if (b < 2) throw input_error("odometer bases must be >= 2");
    for (int64_t b : period_)
        if (b < 2) throw input_error("odometer bases must be >= 2");

    // Minimal period.
    for (std::size_t block = 1; block < period_.size(); ++block) {
        if (is_repetition(period_, block)) {
            period_.resize(block);
            break;
        }
    }
    // Absorb trailing preperiod entries that already agree with the period:
    // (..., x | q_1..q_m) with x == q_m describes the same sequence as
    // (... | q_m q_1..q_{m-1}).
    while (!preperiod_.empty() && preperiod_.back() == period_.back()) {
        preperiod_.pop_back();
        std::rotate(period_.begin(), period_.end() - 1, period_.end());
    }
}

int64_t OdometerSystem::base_at(int64_t i) const {
    if (i < 1) throw internal_error("base_at: coordinate must be >= 1");
    std::size_t k = static_cast<std::size_t>(i - 1);
    if (k < preperiod_.size()) return preperiod_[k];
    return period_[(k - preperiod_.size()) % period_.size()];
}

int64_t OdometerSystem::level_size(int64_t depth) const {
    if (depth < 0) throw internal_error("level_size: negative depth");
    int64_t b = 1;
    for (int64_t i = 1; i <= depth; ++i) b = checked_mul(b, base_at(i));
    return b;
}

int64_t OdometerSystem::max_depth() const {
    int64_t b = 1, d = 0;
    while (true) {
        int64_t next = base_at(d + 1);
        if (b > kMaxLevelSize / next) return d;
        b *= next;
        ++d;
    }
}

OdometerSystem OdometerSystem::tail_from(int64_t depth) const {
    if (depth < 0) throw internal_error("tail_from: negative depth");
    std::size_t d = static_cast<std::size_t>(depth);
    if (d <= preperiod_.size()) {
        return OdometerSystem(
            std::vector<int64_t>(preperiod_.begin() + d, preperiod_.end()), period_);
    }
    std::size_t shift = (d - preperiod_.size()) % period_.size();
    std::vector<int64_t> rotated(period_.begin() + shift, period_.end());
    rotated.insert(rotated.end(), period_.begin(), period_.begin() + shift);
    return OdometerSystem({}, rotated);
}

bool OdometerSystem::coprime_to_future_bases(int64_t depth, int64_t m) const {
    if (m < 0) m = -m;
    if (m <= 1) return true;
    for (std::size_t k = static_cast<std::size_t>(depth); k < preperiod_.size(); ++k)
        if (std::gcd(m, preperiod_[k]) != 1) return false;
    for (int64_t b : period_)
        if (std::gcd(m, b) != 1) return false;
    return true;
}

std::vector<int64_t> code_digits(const OdometerSystem& sys, int64_t depth, int64_t code) {
    std::vector<int64_t> digits;
    digits.reserve(static_cast<std::size_t>(depth));
    for (int64_t i = 1; i <= depth; ++i) {
        int64_t b = sys.base_at(i);
        digits.push_back(code % b);
        code /= b;
    }
    return digits;
}

int64_t digits_code(const OdometerSystem& sys, const std::vector<int64_t>& digits) {
    int64_t code = 0, place = 1;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        int64_t b = sys.base_at(static_cast<int64_t>(i) + 1);
        if (digits[i] < 0 || digits[i] >= b)
            throw code_out_of_range("digit " + std::to_string(digits[i]) +
                                    " out of range for base " + std::to_string(b));
        code += digits[i] * place;
        place *= b;
    }
    return code;
}

ClopenSet::ClopenSet(OdometerSystem sys, int64_t depth, std::vector<int64_t> codes)
    : system_(std::move(sys)), depth_(depth), codes_(std::move(codes)) {
    int64_t size = system_.level_size(depth_);
    std::sort(codes_.begin(), codes_.end());
    codes_.erase(std::unique(codes_.begin(), codes_.end()), codes_.end());
    for (int64_t c : codes_)
        if (c < 0 || c >= size)
            throw code_out_of_range("code " + std::to_string(c) + " out of range [0," +
                                    std::to_string(size) + ")");
    canonicalize();
}

ClopenSet ClopenSet::whole_space(OdometerSystem sys) {
    return ClopenSet(std::move(sys), 0, {0});
}

ClopenSet ClopenSet::cylinder(OdometerSystem sys, Cylinder c) {
    return ClopenSet(std::move(sys), c.depth, {c.code});
}

void ClopenSet::canonicalize() {
    // Reduce one level whenever the code set is a union of full sibling
    // families: the children of a depth-(D-1) parent p are p + j*B_{D-1}.
    while (depth_ > 0) {
        int64_t parent_size = system_.level_size(depth_ - 1);
        int64_t branch = system_.base_at(depth_);
        if (codes_.size() % static_cast<std::size_t>(branch) != 0) break;
        std::vector<int64_t> parents;
        parents.reserve(codes_.size() / static_cast<std::size_t>(branch));
        bool reducible = true;
        for (int64_t c : codes_) {
            if (c % parent_size != c) {
                // Non-first sibling: must belong to a family anchored below.
                if (!std::binary_search(codes_.begin(), codes_.end(), c % parent_size)) {
                    reducible = false;
                    break;
                }
                continue;
            }
            for (int64_t j = 1; j < branch; ++j) {
                if (!std::binary_search(codes_.begin(), codes_.end(), c + j * parent_size)) {
                    reducible = false;
                    break;
                }
            }
            if (!reducible) break;
            parents.push_back(c);
        }
        if (!reducible) break;
        codes_ = std::move(parents);
        --depth_;
    }
    if (codes_.empty()) depth_ = 0;
}

std::vector<int64_t> ClopenSet::codes_at(int64_t depth) const {
    if (depth < depth_) throw internal_error("codes_at: refinement depth below native depth");
    int64_t own_size = system_.level_size(depth_);
    int64_t size = system_.level_size(depth);
    std::vector<int64_t> out;
    out.reserve(codes_.size() * static_cast<std::size_t>(size / std::max<int64_t>(own_size, 1)));
    for (int64_t block = 0; block < size; block += own_size)
        for (int64_t c : codes_) out.push_back(block + c);
    std::sort(out.begin(), out.end());
    return out;
}

bool ClopenSet::contains(Cylinder c) const {
    if (c.depth >= depth_) {
        return std::binary_search(codes_.begin(), codes_.end(),
                                  c.code % system_.level_size(depth_));
    }
    // A shallower cylinder is contained iff all its refinements are.
    ClopenSet cyl = ClopenSet::cylinder(system_, c);
    return cyl.subset_of(*this);
}

void ClopenSet::check_same_system(const ClopenSet& other) const {
    if (!(system_ == other.system_))
        throw system_mismatch("clopen sets over different odometer systems");
}

ClopenSet ClopenSet::union_with(const ClopenSet& other) const {
    check_same_system(other);
    int64_t d = std::max(depth_, other.depth_);
    std::vector<int64_t> a = codes_at(d), b = other.codes_at(d), out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return ClopenSet(system_, d, std::move(out));
}

ClopenSet ClopenSet::intersect(const ClopenSet& other) const {
    check_same_system(other);
    int64_t d = std::max(depth_, other.depth_);
    std::vector<int64_t> a = codes_at(d), b = other.codes_at(d), out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return ClopenSet(system_, d, std::move(out));
}

ClopenSet ClopenSet::complement() const {
    int64_t size = system_.level_size(depth_);
    std::vector<int64_t> out;
    out.reserve(static_cast<std::size_t>(size) - codes_.size());
    std::size_t i = 0;
    for (int64_t c = 0; c < size; ++c) {
        if (i < codes_.size() && codes_[i] == c) { ++i; continue; }
        out.push_back(c);
    }
    return ClopenSet(system_, depth_, std::move(out));
}

ClopenSet ClopenSet::difference(const ClopenSet& other) const {
    check_same_system(other);
    int64_t d = std::max(depth_, other.depth_);
    std::vector<int64_t> a = codes_at(d), b = other.codes_at(d), out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return ClopenSet(system_, d, std::move(out));
}

bool ClopenSet::subset_of(const ClopenSet& other) const {
    check_same_system(other);
    int64_t d = std::max(depth_, other.depth_);
    std::vector<int64_t> a = codes_at(d), b = other.codes_at(d);
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

ClopenSet ClopenSet::translate(int64_t t) const {
    int64_t size = system_.level_size(depth_);
    int64_t shift = ((t % size) + size) % size;
    std::vector<int64_t> out;
    out.reserve(codes_.size());
    for (int64_t c : codes_) out.push_back((c + shift) % size);
    return ClopenSet(system_, depth_, std::move(out));
}

ClopenSet ClopenSet::mirror() const {
    int64_t size = system_.level_size(depth_);
    std::vector<int64_t> out;
    out.reserve(codes_.size());
    for (int64_t c : codes_) out.push_back(size - 1 - c);
    return ClopenSet(system_, depth_, std::move(out));
}

std::pair<int64_t, int64_t> ClopenSet::measure() const {
    int64_t num = static_cast<int64_t>(codes_.size());
    int64_t den = system_.level_size(depth_);
    int64_t g = std::gcd(num, den);
    if (g == 0) return {0, 1};
    return {num / g, den / g};
}

}  // namespace tfg
