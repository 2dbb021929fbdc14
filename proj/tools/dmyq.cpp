// dmyq: command-line front end for the analysis pipeline.
//
// Exit codes: 0 analysis ran (whatever the verdict), 2 input or usage error,
// 3 internal inconsistency.

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <dmyq/dmyq.hpp>

namespace {

using namespace dmyq;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

enum class Format { Text, Json };

struct Options {
    std::string input;
    Format format = Format::Text;
    int degree_cap = kDefaultDegreeCap;
    double tol = kDefaultSymmetryTol;
    WitnessConfig search;
    bool search_witness = true;
    OrbitConfig orbit;
    GridSpec grid;
    std::string point;
    std::string csv_path;
};

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Line {
    std::size_t number;
    std::string text;
};

std::vector<Line> read_lines(std::istream& in) {
    std::vector<Line> out;
    std::string s;
    for (std::size_t n = 1; std::getline(in, s); ++n) {
        auto first = s.find_first_not_of(" \t\r");
        if (first == std::string::npos || s[first] == '#') continue;
        out.push_back({n, s});
    }
    return out;
}

std::vector<Line> collect_inputs(const std::string& input) {
    auto first = input.find_first_not_of(" \t");
    if (first != std::string::npos && input[first] == '(') return {{1, input}};
    if (input == "-") return read_lines(std::cin);
    std::ifstream f(input);
    if (!f) throw InputError("cannot open input file '" + input + "'");
    return read_lines(f);
}

RatVec parse_point(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) throw InputError("--point expects x,y (rationals), got '" + s + "'");
    try {
        return {parse_rat(s.substr(0, comma)), parse_rat(s.substr(comma + 1))};
    } catch (const std::invalid_argument& e) {
        throw InputError("--point: " + std::string(e.what()));
    }
}

std::string format_matrix(const RatMat& m) {
    return "[[" + to_string(m(0, 0)) + ", " + to_string(m(0, 1)) + "], [" + to_string(m(1, 0)) + ", " +
           to_string(m(1, 1)) + "]]";
}

std::string format_matrix(const FloatMat& m) {
    std::ostringstream os;
    os.precision(12);
    os << "[[" << m(0, 0) << ", " << m(0, 1) << "], [" << m(1, 0) << ", " << m(1, 1) << "]]";
    return os.str();
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

// ---------------------------------------------------------------------------
// Subcommand bodies. Each writes either text or a JSON object for one map.

struct Output {
    std::string text;
    json doc;
};

Output run_analyze(const PolyMap& F, const Options& o) {
    AnalyzeConfig cfg{o.search, o.tol, o.search_witness};
    Verdict v = analyze(F, cfg);
    return {explain(v), to_json(v)};
}

Output run_normal_form(const PolyMap& F, const Options&) {
    json doc{{"map", format_map(F)}};
    std::string text;
    auto r = decompose(F);
    if (const auto* nf = std::get_if<NormalFormData>(&r)) {
        doc["decomposed"] = true;
        doc["normal_form"] = to_json(*nf);
        text = "B = " + format_matrix(nf->B) + "\n";
        text += "(a, b) = (" + to_string(nf->a) + ", " + to_string(nf->b) + ")\n";
        text += "(alpha, beta) = (" + to_string(nf->alpha) + ", " + to_string(nf->beta) + ")\n";
        text += "p(u) = " + format_poly1(nf->p, 'u') + "\n";
        text += "r(u) = " + format_poly1(nf->r, 'u') + "\n";
    } else {
        const auto& f = std::get<DecomposeFailure>(r);
        doc["decomposed"] = false;
        doc["failure"] = to_json(f);
        text = std::string("no normal form: ") + to_string(f.reason) + "\n";
        if (!f.detail.empty()) text += "  " + f.detail + "\n";
    }
    return {text, doc};
}

Output run_symmetry(const PolyMap& F, const Options& o) {
    SymmetryGroup g = classify(F, o.tol);
    json doc = to_json(g);
    doc["map"] = format_map(F);
    doc["label"] = g.label();
    std::string text = g.label() + "\n";
    text += "rotation order: " + (g.rotation.continuous ? std::string("continuous") : std::to_string(g.rotation.n)) + "\n";
    if (!g.has_reflection) {
        text += "reflection axes: none\n";
    } else if (g.axes.empty()) {
        text += "reflection axes: every angle\n";
    } else {
        text += "reflection axes:";
        for (const auto& ax : g.axes) text += " " + format_double(ax.angle);
        text += "\n";
    }
    text += "generators:\n";
    for (const auto& gen : g.generators)
        text += "  " + (gen.exact ? format_matrix(*gen.exact) : format_matrix(gen.approx)) + "\n";
    return {text, doc};
}

Output run_witness(const PolyMap& F, const Options& o) {
    auto w = witness_search(F, o.search);
    json doc{{"map", format_map(F)}, {"witness", w ? to_json(*w) : json(nullptr)}};
    std::string text;
    if (w) {
        text = "point: (" + format_double(w->point.x) + ", " + format_double(w->point.y) + ")\n";
        text += "spectral radius: " + format_double(w->spectral_radius) + "\n";
        text += std::string("certified: ") + (w->certified ? "yes" : "no") + "\n";
    } else {
        text = "no witness found up to extent " + format_double(o.search.max_extent) + "\n";
    }
    return {text, doc};
}

Output run_orbits(const PolyMap& F, const Options& o) {
    json doc{{"map", format_map(F)}};
    std::string text;
    if (!o.point.empty()) {
        RatVec p = parse_point(o.point);
        OrbitResult r = iterate(F, {p.x.get_d(), p.y.get_d()}, o.orbit);
        doc["orbit"] = to_json(r);
        text = std::string(to_string(r.outcome)) + " after " + std::to_string(r.steps) + " steps";
        text += r.non_finite ? " (non-finite value)\n" : " (final norm " + format_double(r.final_norm) + ")\n";
        return {text, doc};
    }
    BasinSummary s = basin_scan(F, o.grid, o.orbit);
    doc["basin"] = to_json(s);
    text = "grid: [-" + format_double(s.grid.extent) + ", " + format_double(s.grid.extent) + "]^2, step " +
           format_double(s.grid.step) + ", " + std::to_string(s.total()) + " starts\n";
    text += "Converged: " + std::to_string(s.converged) + "\n";
    text += "Escaped: " + std::to_string(s.escaped) + "\n";
    text += "Undecided: " + std::to_string(s.undecided) + "\n";
    text += "worst steps: " + std::to_string(s.worst_steps) + "\n";
    if (!o.csv_path.empty()) {
        std::ofstream f(o.csv_path);
        if (!f) throw InputError("cannot write '" + o.csv_path + "'");
        f << exceptions_csv(s);
    }
    return {text, doc};
}

Output run_jury(const PolyMap& F, const Options& o) {
    if (o.point.empty()) throw InputError("jury requires --point x,y");
    RatVec p = parse_point(o.point);
    DiskTest t = disk_test_at(jacobian(F), p);
    json doc{{"map", format_map(F)},
             {"point", json::array({to_string(p.x), to_string(p.y)})},
             {"inside", t.inside},
             {"trace", to_string(t.trace)},
             {"det", to_string(t.det)}};
    std::string text = std::string("inside=") + (t.inside ? "true" : "false") + " trace=" + to_string(t.trace) +
                       " det=" + to_string(t.det) + "\n";
    return {text, doc};
}

using Runner = std::function<Output(const PolyMap&, const Options&)>;

int drive(const Options& o, const Runner& run) {
    std::vector<Line> lines;
    try {
        lines = collect_inputs(o.input);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    if (lines.empty()) {
        std::cerr << "error: no maps in input\n";
        return kExitInput;
    }
    const bool batch = lines.size() > 1;
    int code = kExitOk;
    bool first = true;
    for (const auto& line : lines) {
        auto where = [&] { return batch ? "line " + std::to_string(line.number) + ": " : std::string(); };
        try {
            PolyMap F = parse_map(line.text, o.degree_cap);
            Output out = run(F, o);
            if (o.format == Format::Json) {
                json doc{{"version", kVersion}};
                doc.update(out.doc);
                std::cout << (batch ? doc.dump() : doc.dump(2)) << "\n";
            } else {
                if (!first) std::cout << "\n";
                if (batch) std::cout << "# " << format_map(F) << "\n";
                std::cout << out.text;
            }
            first = false;
        } catch (const InternalInconsistency& e) {
            std::cerr << "internal inconsistency: " << where() << e.what() << "\n";
            return kExitInternal;
        } catch (const ParseError& e) {
            std::cerr << "error: " << where() << e.what() << "\n";
            code = kExitInput;
        } catch (const std::exception& e) {
            std::cerr << "error: " << where() << e.what() << "\n";
            code = kExitInput;
        }
    }
    std::cout.flush();
    return code;
}

// ---------------------------------------------------------------------------
// Flag registration.

void add_input(CLI::App* sub, Options& o) {
    sub->add_option("input", o.input, "Map as \"(f1, f2)\", a file with one map per line, or - for stdin")
        ->required();
    sub->add_option("--format", o.format, "Output format")
        ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"text", Format::Text}, {"json", Format::Json}}))
        ->default_str("text");
    sub->add_option("--degree-cap", o.degree_cap, "Maximum total degree accepted by the parser")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
}

void add_tol(CLI::App* sub, Options& o) {
    sub->add_option("--tol", o.tol, "Tolerance for reflection axes off multiples of pi/4")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
}

void add_search(CLI::App* sub, Options& o) {
    sub->add_option("--seed", o.search.seed, "Seed for witness search restarts")->capture_default_str();
    sub->add_option("--grid-extent", o.search.grid_extent, "Half-width of the initial search box")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_option("--grid-step", o.search.grid_step, "Spacing of the coarse search grid")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_option("--restarts", o.search.restarts, "Number of local ascents per round")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_option("--search-iters", o.search.max_iters, "Ascent step budget per round")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_option("--max-extent", o.search.max_extent, "Largest search box before giving up")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
}

void add_orbit(CLI::App* sub, Options& o) {
    sub->add_option("--grid-extent", o.grid.extent, "Half-width of the grid of starting points")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--grid-step", o.grid.step, "Grid spacing")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--max-iter", o.orbit.max_iter, "Iterations before an orbit is Undecided")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_option("--conv-tol", o.orbit.conv_tol, "Norm below which an orbit counts as converged")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_option("--escape-radius", o.orbit.escape_radius, "Norm above which an orbit counts as escaped")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_option("--point", o.point, "Iterate a single orbit from x,y instead of scanning a grid");
    sub->add_option("--csv", o.csv_path, "Write non-converged starts to this CSV file");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decide the hypotheses of the planar polynomial normal-form theorem for F(x, y)"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    Options o;
    Runner runner;

    auto* analyze_cmd = app.add_subcommand("analyze", "Full verdict with certificate, symmetry and witness");
    add_input(analyze_cmd, o);
    add_tol(analyze_cmd, o);
    add_search(analyze_cmd, o);
    analyze_cmd->add_flag("!--no-witness", o.search_witness, "Skip the numeric witness search");
    analyze_cmd->callback([&] { runner = run_analyze; });

    auto* nf_cmd = app.add_subcommand("normal-form", "Decompose F = B + r(ax + by)(alpha, beta)");
    add_input(nf_cmd, o);
    nf_cmd->callback([&] { runner = run_normal_form; });

    auto* sym_cmd = app.add_subcommand("symmetry", "Report the orthogonal symmetry group");
    add_input(sym_cmd, o);
    add_tol(sym_cmd, o);
    sym_cmd->callback([&] { runner = run_symmetry; });

    auto* wit_cmd = app.add_subcommand("witness", "Search for a point whose Jacobian leaves the unit disk");
    add_input(wit_cmd, o);
    add_search(wit_cmd, o);
    wit_cmd->callback([&] { runner = run_witness; });

    auto* orb_cmd = app.add_subcommand("orbits", "Iterate F over a grid of starting points");
    add_input(orb_cmd, o);
    add_orbit(orb_cmd, o);
    orb_cmd->callback([&] { runner = run_orbits; });

    auto* jury_cmd = app.add_subcommand("jury", "Exact eigenvalue-in-disk test of the Jacobian at a point");
    add_input(jury_cmd, o);
    jury_cmd->add_option("--point", o.point, "Rational point x,y, e.g. 1/2,-3")->required();
    jury_cmd->callback([&] { runner = run_jury; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }
    return drive(o, runner);
}
