#include "tfg/cli.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "tfg/expr.hpp"
#include "tfg/io.hpp"
#include "tfg/positive.hpp"

namespace tfg {

namespace {

struct WeldDescription {
    std::vector<std::pair<int, OdometerSystem>> components;
    bool have_kappa = false;
    int from_tag = 1, to_tag = 2;
    Cylinder from_cyl, to_cyl;
    std::vector<std::pair<int, std::string>> specs;
};

std::pair<int, Cylinder> parse_tagged_cylinder(const std::string& text,
                                               const std::vector<std::pair<int, OdometerSystem>>& comps) {
    std::size_t colon = text.find(':');
    if (colon == std::string::npos) throw input_error("expected TAG:[digits] in weld file");
    int tag = std::stoi(text.substr(0, colon));
    const OdometerSystem* sys = nullptr;
    for (const auto& [t, s] : comps)
        if (t == tag) sys = &s;
    if (!sys) throw input_error("unknown component tag " + std::to_string(tag));
    auto set = parse_set_expression(text.substr(colon + 1));
    ClopenSet cyl = eval(*set, *sys);
    if (cyl.codes().size() != 1 && !cyl.is_whole_space())
        throw input_error("kappa endpoints must be single cylinders");
    return {tag, Cylinder{cyl.depth(), cyl.is_empty() ? 0 : cyl.codes()[0]}};
}

WeldDescription parse_weld_file(std::istream& in) {
    WeldDescription d;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head[0] == '#') continue;
        if (head == "component") {
            int tag = 0;
            ls >> tag;
            std::string rest;
            std::getline(ls, rest);
            d.components.emplace_back(tag, parse_system(rest));
        } else if (head == "kappa") {
            std::string a, b;
            ls >> a >> b;
            auto [t1, c1] = parse_tagged_cylinder(a, d.components);
            auto [t2, c2] = parse_tagged_cylinder(b, d.components);
            d.from_tag = t1;
            d.from_cyl = c1;
            d.to_tag = t2;
            d.to_cyl = c2;
            d.have_kappa = true;
        } else if (head == "spec") {
            int tag = 0;
            ls >> tag;
            std::string rest;
            std::getline(ls, rest);
            d.specs.emplace_back(tag, rest);
        } else {
            throw input_error("unknown weld file directive '" + head + "'");
        }
    }
    if (d.components.empty()) throw input_error("weld file names no components");
    return d;
}

const OdometerSystem& component_system(const WeldDescription& d, int tag) {
    for (const auto& [t, s] : d.components)
        if (t == tag) return s;
    throw input_error("unknown component tag " + std::to_string(tag));
}

int dispatch(const std::vector<std::string>& args, std::ostream& out) {
    CLI::App app{"exact computations in topological full groups of odometers"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    std::string bases = "per=[2]";
    std::string out_file;
    int64_t depth_cap = 64;
    app.add_option("--bases", bases, "odometer base description, e.g. pre=[2] per=[3]")
        ->capture_default_str();
    app.add_option("--depth-cap", depth_cap, "refinement depth cap")->capture_default_str();
    app.add_option("--out", out_file, "write the report to a file");

    std::string expr_text, set_text, word_file;
    int64_t window = 1000, period = 0;

    CLI::App* analyze = app.add_subcommand("analyze", "full orbit analysis of an element");
    analyze->add_option("expr", expr_text, "element expression")->required();

    CLI::App* nf = app.add_subcommand("normal-form", "nested induced-transformation form");
    nf->add_option("expr", expr_text, "element expression")->required();

    CLI::App* rw = app.add_subcommand("reduce-word", "reduce a word over the generators");
    rw->add_option("expr", expr_text, "word expression")->required();

    CLI::App* pf = app.add_subcommand("positive-form", "strongly positive form");
    pf->add_option("expr", expr_text, "element expression")->required();

    CLI::App* cj = app.add_subcommand("conjugator", "canonical strongly positive conjugator");
    cj->add_option("expr", expr_text, "element expression")->required();

    CLI::App* pc = app.add_subcommand("pure-cycles", "pure cycle decomposition");
    pc->add_option("expr", expr_text, "element expression")->required();

    CLI::App* ind = app.add_subcommand("induce", "first-return map on a clopen set");
    ind->add_option("expr", expr_text, "element expression")->required();
    ind->add_option("--set", set_text, "clopen set expression")->required();

    CLI::App* ix = app.add_subcommand("index", "index of an element");
    ix->add_option("expr", expr_text, "element expression")->required();

    CLI::App* sim = app.add_subcommand("simulate", "line simulation oracle");
    sim->add_option("expr", expr_text, "element expression")->required();
    sim->add_option("--window", window, "half-width of the simulated window")
        ->capture_default_str();

    CLI::App* weld_cmd = app.add_subcommand("weld", "weld systems along a Kakutani map");
    weld_cmd->add_option("file", word_file, "weld description file")->required();

    CLI::App* layers = app.add_subcommand("layers", "periodic layer decomposition");
    layers->add_option("expr", expr_text, "element expression")->required();
    layers->add_option("--period", period, "orbit period n")->required();

    std::vector<const char*> argv;
    argv.push_back("tfg");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        std::ostringstream msg;
        int code = app.exit(e, msg, msg);
        out << msg.str();
        return code == 0 ? 0 : 2;
    }

    OdometerSystem sys = parse_system(bases);
    std::ostringstream report;

    auto element = [&]() { return eval(*parse_expression(expr_text), sys); };

    if (analyze->parsed()) {
        report << analyze_report(element(), depth_cap);
    } else if (nf->parsed()) {
        report << to_string(normal_form(element())) << "\n";
    } else if (rw->parsed()) {
        GeneratorWord word = word_from(*parse_expression(expr_text), sys);
        report << to_string(reduce_word(word)) << "\n";
    } else if (pf->parsed()) {
        report << to_string(positive_form(element())) << "\n";
    } else if (cj->parsed()) {
        report << to_string(canonical_conjugator(element())) << "\n";
    } else if (pc->parsed()) {
        report << pure_cycles_report(element());
    } else if (ind->parsed()) {
        ClopenSet a = eval(*parse_set_expression(set_text), sys);
        report << to_string(induced_element(element(), a)) << "\n";
    } else if (ix->parsed()) {
        report << index_of(element()) << "\n";
    } else if (sim->parsed()) {
        Element h = element();
        report << simulate_report(h, simulate_line(h, window));
    } else if (layers->parsed()) {
        Element h = element();
        std::vector<ClopenSet> parts = periodic_layers(h, period);
        for (std::size_t i = 0; i < parts.size(); ++i)
            report << "layer " << i << ": " << to_string(parts[i]) << "\n";
    } else if (weld_cmd->parsed()) {
        std::ifstream file(word_file);
        if (!file) throw input_error("cannot open weld file '" + word_file + "'");
        WeldDescription d = parse_weld_file(file);
        WeldedSystem w = [&] {
            if (d.components.size() == 1)
                return single_component_weld(d.components[0].second, 1);
            if (!d.have_kappa) throw input_error("two components need a kappa line");
            const OdometerSystem& s1 = component_system(d, d.from_tag);
            const OdometerSystem& s2 = component_system(d, d.to_tag);
            return weld(s1, s2, canonical_equivalence(s1, d.from_cyl, s2, d.to_cyl), depth_cap);
        }();
        if (d.specs.empty()) {
            report << weld_report(w, nullptr);
        } else {
            std::vector<Element> specs;
            for (const auto& comp : w.components()) {
                const std::string* text = nullptr;
                for (const auto& [tag, t] : d.specs)
                    if (tag == comp.tag) text = &t;
                if (!text) throw input_error("missing spec for component " +
                                             std::to_string(comp.tag));
                specs.push_back(eval(*parse_expression(*text), comp.system));
            }
            WeldAnalysis analysis = weld_element(w, std::move(specs), depth_cap);
            report << weld_report(w, &analysis);
        }
    }

    if (!out_file.empty()) {
        std::ofstream f(out_file);
        if (!f) throw input_error("cannot open output file '" + out_file + "'");
        f << report.str();
    } else {
        out << report.str();
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(args, out);
    } catch (const parse_error& e) {
        err << "parse error at column " << (e.position + 1) << ": " << e.what() << "\n";
        return 2;
    } catch (const input_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace tfg
