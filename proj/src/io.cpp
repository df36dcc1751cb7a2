#include "tfg/io.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

namespace tfg {

namespace {

std::string int_list(const std::vector<int64_t>& xs) {
    std::string out = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(xs[i]);
    }
    return out + "]";
}

std::vector<int64_t> parse_int_list(const std::string& text, std::size_t& pos) {
    if (pos >= text.size() || text[pos] != '[') throw parse_error("expected '['", pos);
    ++pos;
    std::vector<int64_t> out;
    while (pos < text.size() && text[pos] != ']') {
        if (text[pos] == ',' || text[pos] == ' ') { ++pos; continue; }
        bool neg = text[pos] == '-';
        if (neg) ++pos;
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            throw parse_error("expected an integer", pos);
        int64_t v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            v = v * 10 + (text[pos++] - '0');
        out.push_back(neg ? -v : v);
    }
    if (pos >= text.size()) throw parse_error("unterminated list", pos);
    ++pos;  // ']'
    return out;
}

bool small_bases(const OdometerSystem& sys, int64_t depth) {
    for (int64_t i = 1; i <= depth; ++i)
        if (sys.base_at(i) > 10) return false;
    return true;
}

}  // namespace

std::string to_string(const OdometerSystem& sys) {
    std::string out;
    if (!sys.preperiod().empty()) out += "pre=" + int_list(sys.preperiod()) + " ";
    out += "per=" + int_list(sys.period());
    return out;
}

OdometerSystem parse_system(const std::string& text) {
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip();
    if (text.compare(pos, 5, "bases") == 0) pos += 5;
    std::vector<int64_t> pre, per;
    bool have_per = false;
    while (true) {
        skip();
        if (pos >= text.size()) break;
        if (text.compare(pos, 4, "pre=") == 0) {
            pos += 4;
            pre = parse_int_list(text, pos);
        } else if (text.compare(pos, 4, "per=") == 0) {
            pos += 4;
            per = parse_int_list(text, pos);
            have_per = true;
        } else {
            throw parse_error("expected 'pre=[...]' or 'per=[...]'", pos);
        }
    }
    if (!have_per) throw parse_error("system literal needs 'per=[...]'", pos);
    return OdometerSystem(std::move(pre), std::move(per));
}

std::string to_string(const OdometerSystem& sys, Cylinder c) {
    std::vector<int64_t> digits = code_digits(sys, c.depth, c.code);
    std::string out = "[";
    if (small_bases(sys, c.depth)) {
        for (int64_t d : digits) out += static_cast<char>('0' + d);
    } else {
        for (std::size_t i = 0; i < digits.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(digits[i]);
        }
    }
    return out + "]";
}

std::string to_string(const ClopenSet& a) {
    if (a.is_empty()) return "empty";
    std::string out;
    for (std::size_t i = 0; i < a.codes().size(); ++i) {
        if (i) out += "+";
        out += to_string(a.system(), {a.depth(), a.codes()[i]});
    }
    return out;
}

std::string to_string(const Element& h) {
    const OdometerSystem& sys = h.system();
    std::string out = "D";
    bool compact = sys.preperiod().empty();
    for (int64_t b : sys.period())
        if (b > 9) compact = false;
    if (compact) {
        for (int64_t b : sys.period()) out += static_cast<char>('0' + b);
    } else {
        if (!sys.preperiod().empty()) out += "pre=" + int_list(sys.preperiod());
        out += "per=" + int_list(sys.period());
    }
    out += "@" + std::to_string(h.depth()) + "{";
    for (std::size_t w = 0; w < h.table().size(); ++w) {
        if (w) out += ",";
        out += std::to_string(w) + ":" + std::to_string(h.table()[w]);
    }
    return out + "}";
}

Element parse_element(const std::string& text) {
    std::size_t pos = 0;
    if (pos >= text.size() || text[pos] != 'D') throw parse_error("element literal starts with 'D'", pos);
    ++pos;
    std::vector<int64_t> pre, per;
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            per.push_back(text[pos++] - '0');
    } else {
        if (text.compare(pos, 4, "pre=") == 0) {
            pos += 4;
            pre = parse_int_list(text, pos);
        }
        if (text.compare(pos, 4, "per=") != 0) throw parse_error("expected 'per=[...]'", pos);
        pos += 4;
        per = parse_int_list(text, pos);
    }
    OdometerSystem sys(std::move(pre), std::move(per));
    if (pos >= text.size() || text[pos] != '@') throw parse_error("expected '@depth'", pos);
    ++pos;
    int64_t depth = 0;
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
        throw parse_error("expected a depth", pos);
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        depth = depth * 10 + (text[pos++] - '0');
    if (pos >= text.size() || text[pos] != '{') throw parse_error("expected '{table}'", pos);
    ++pos;
    int64_t size = sys.level_size(depth);
    std::vector<int64_t> table(static_cast<std::size_t>(size), 0);
    std::vector<bool> seen(static_cast<std::size_t>(size), false);
    while (pos < text.size() && text[pos] != '}') {
        if (text[pos] == ',' || text[pos] == ' ') { ++pos; continue; }
        int64_t code = 0;
        if (!std::isdigit(static_cast<unsigned char>(text[pos])))
            throw parse_error("expected a code", pos);
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            code = code * 10 + (text[pos++] - '0');
        if (pos >= text.size() || text[pos] != ':') throw parse_error("expected ':'", pos);
        ++pos;
        bool neg = pos < text.size() && text[pos] == '-';
        if (neg) ++pos;
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            throw parse_error("expected an exponent", pos);
        int64_t value = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            value = value * 10 + (text[pos++] - '0');
        if (code < 0 || code >= size) throw code_out_of_range("table code out of range");
        table[static_cast<std::size_t>(code)] = neg ? -value : value;
        seen[static_cast<std::size_t>(code)] = true;
    }
    if (pos >= text.size()) throw parse_error("unterminated table", pos);
    ++pos;
    if (pos != text.size()) throw parse_error("unexpected trailing input", pos);
    for (bool s : seen)
        if (!s) throw parse_error("table must list every code", pos);
    return Element(std::move(sys), depth, std::move(table));
}

namespace {

std::string token_text(const WordToken& t) {
    switch (t.kind) {
        case WordToken::Kind::gen: return "g";
        case WordToken::Kind::gen_inverse: return "g^-1";
        case WordToken::Kind::induced: {
            if (t.set.is_whole_space()) return "g_[]";
            if (t.set.codes().size() == 1)
                return "g_" + to_string(t.set.system(), {t.set.depth(), t.set.codes()[0]});
            return "g_(" + to_string(t.set) + ")";
        }
    }
    return "?";
}

}  // namespace

std::string to_string(const GeneratorWord& w) {
    if (w.tokens.empty()) return "id";
    std::vector<std::string> texts;
    for (const WordToken& t : w.tokens) texts.push_back(token_text(t));
    // Collapse runs of equal tokens; inverse runs render as g^-k.
    std::string out;
    std::size_t i = 0;
    while (i < texts.size()) {
        std::size_t j = i;
        while (j < texts.size() && texts[j] == texts[i]) ++j;
        if (!out.empty()) out += " ";
        std::size_t run = j - i;
        if (run == 1) {
            out += texts[i];
        } else if (texts[i] == "g^-1") {
            out += "g^-" + std::to_string(run);
        } else {
            out += texts[i] + "^" + std::to_string(run);
        }
        i = j;
    }
    return out;
}

std::string to_string(const NormalForm& nf) {
    GeneratorWord word{nf.system, {}};
    for (auto it = nf.chain.rbegin(); it != nf.chain.rend(); ++it)
        word.tokens.push_back({WordToken::Kind::induced, *it});
    if (nf.power > 0)
        for (int64_t i = 0; i < nf.power; ++i)
            word.tokens.push_back({WordToken::Kind::gen, ClopenSet(nf.system)});
    if (nf.power < 0)
        for (int64_t i = 0; i < -nf.power; ++i)
            word.tokens.push_back({WordToken::Kind::gen_inverse, ClopenSet(nf.system)});
    return to_string(word);
}

std::string to_string(const Rational& r) {
    if (r.den == 1) return std::to_string(r.num);
    return std::to_string(r.num) + "/" + std::to_string(r.den);
}

namespace {

const char* class_name(CycleClass c) {
    switch (c) {
        case CycleClass::periodic: return "periodic";
        case CycleClass::positive: return "positive";
        case CycleClass::negative: return "negative";
    }
    return "?";
}

}  // namespace

std::string analyze_report(const Element& h, int64_t depth_cap) {
    std::ostringstream out;
    CycleGraph g = cycle_graph(h);
    SignPartition sp = sign_partition(h);
    MinimalPeriodicPartition mp = minimal_periodic_partition(h, depth_cap);
    OrbitNumbers o = orbit_numbers(g.cycles);
    out << "system: " << to_string(h.system()) << "\n";
    out << "element: " << to_string(h) << "\n";
    out << "norm: " << h.norm() << "\n";
    out << "index: " << index_of(h) << "\n";
    out << "orbits: o+=" << o.positive << " o-=" << o.negative << "\n";
    out << "m: " << mp.component_count() << "\n";
    out << "sign-partition:\n";
    out << "  periodic: " << to_string(sp.periodic_set) << "\n";
    out << "  positive: " << to_string(sp.positive_set) << "\n";
    out << "  negative: " << to_string(sp.negative_set) << "\n";
    out << "cycles:\n";
    for (const Cycle& c : g.cycles) {
        out << "  - members=" << int_list(c.members) << " length=" << c.length()
            << " sum=" << c.sum << " multiplier=" << c.multiplier
            << " class=" << class_name(c.cls) << "\n";
    }
    out << "periodic-parts:";
    if (mp.periodic_parts.empty()) out << " none";
    out << "\n";
    for (const auto& [n, part] : mp.periodic_parts)
        out << "  - period=" << n << " set=" << to_string(part) << "\n";
    out << "minimal-components:";
    if (mp.components.empty()) out << " none";
    out << "\n";
    for (std::size_t i = 0; i < mp.components.size(); ++i)
        out << "  - set=" << to_string(mp.components[i])
            << " orientation=" << (mp.component_orientation[i] > 0 ? "+" : "-") << "\n";
    return out.str();
}

std::string simulate_report(const Element& h, const OrbitStats& stats) {
    std::ostringstream out;
    out << "element: " << to_string(h) << "\n";
    out << "window: " << stats.window << "\n";
    out << "orbits-crossing-center: o+=" << stats.crossing_positive
        << " o-=" << stats.crossing_negative << "\n";
    int64_t periodic_points = 0, traces = 0;
    for (const auto& orbit : stats.orbits) {
        if (orbit.period > 0) periodic_points += orbit.size;
        ++traces;
    }
    out << "traces: " << traces << "\n";
    out << "periodic-points: " << periodic_points << "\n";
    int64_t count = 2 * stats.window + 1;
    int64_t g = std::gcd(stats.cocycle_sum < 0 ? -stats.cocycle_sum : stats.cocycle_sum, count);
    if (g == 0) g = 1;
    out << "cocycle-average: " << to_string(Rational{stats.cocycle_sum / g, count / g}) << "\n";
    return out.str();
}

std::string pure_cycles_report(const Element& h) {
    std::ostringstream out;
    std::vector<PureCycle> cycles = pure_cycle_decomposition(h);
    out << "element: " << to_string(h) << "\n";
    out << "pure-cycles: " << cycles.size() << "\n";
    for (const PureCycle& c : cycles) {
        out << "  - base=" << to_string(c.base) << " length=" << c.length
            << " signature=" << int_list(c.signature) << "\n";
    }
    return out.str();
}

std::string to_string(const WeldedSystem::TaggedCylinder& c, const WeldedSystem& w) {
    for (const auto& comp : w.components())
        if (comp.tag == c.tag)
            return std::to_string(c.tag) + ":" + to_string(comp.system, {comp.depth, c.code});
    throw internal_error("unknown component tag");
}

std::string weld_report(const WeldedSystem& w, const WeldAnalysis* analysis) {
    std::ostringstream out;
    out << "components:\n";
    for (const auto& comp : w.components())
        out << "  - tag=" << comp.tag << " system=" << to_string(comp.system)
            << " depth=" << comp.depth << "\n";
    out << "quotient-cycle:";
    for (const auto& c : w.cycle_order()) out << " " << to_string(c, w);
    out << "\n";
    out << "quotient-length: " << w.cylinder_count() << "\n";
    for (const auto& comp : w.components()) {
        Element back = induced_on_component(w, comp.tag);
        out << "first-return tag=" << comp.tag << ": " << to_string(back) << "\n";
    }
    if (analysis) {
        out << "table:";
        for (const auto& [cyl, e] : analysis->table)
            out << " " << to_string(cyl, analysis->system) << ":" << e;
        out << "\n";
        out << "orbits: o+=" << analysis->orbits.positive << " o-=" << analysis->orbits.negative
            << "\n";
        out << "m: " << analysis->component_count << "\n";
        out << "index: " << analysis->index << "\n";
    }
    return out.str();
}

}  // namespace tfg
