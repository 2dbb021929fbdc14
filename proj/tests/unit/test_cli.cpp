#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

std::string quote(const std::string& s) {
    std::string q = "'";
    for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
    return q + "'";
}

CliRun run(const std::vector<std::string>& args, const std::string& stdin_text = "") {
    static int counter = 0;
    fs::path dir = fs::temp_directory_path() / ("dmyq_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    std::string tag = std::to_string(counter++);
    fs::path in = dir / (tag + ".in"), out = dir / (tag + ".out"), err = dir / (tag + ".err");
    std::ofstream(in) << stdin_text;
    std::string cmd = quote(DMYQ_CLI_PATH);
    for (const auto& a : args) cmd += " " + quote(a);
    cmd += " < " + quote(in.string()) + " > " + quote(out.string()) + " 2> " + quote(err.string());
    int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

// CLI output is nlohmann dump(2), so a parse and re-dump is byte-identical apart from the dropped key.
std::string strip_version(const std::string& s) {
    json j = json::parse(s);
    j.erase("version");
    return j.dump(2) + "\n";
}

struct Fixture {
    const char* name;
    const char* map;
};

const Fixture kFixtures[] = {
    {"paper_nonproportional", "(x/2 + y^2, y/3 + y^3)"},
    {"paper_z4", "(x/2 - y^3, y/2 + x^3)"},
    {"gen_hold", "(1/5*x, -21/40*x + 3/5*y + 1/32*x^2 - 1/64*x^3)"},
    {"gen_root_failure", "(1/2*x - y, 7/4*x + 1/2*y - 5/2*y^2 - 1/2*y^3)"},
    {"gen_z3", "(-5/2*x^4 - 4*x^3*y + 15*x^2*y^2 + 4*x*y^3 - 5/2*y^4, x^4 - 10*x^3*y - 6*x^2*y^2 + 10*x*y^3 + y^4)"},
};

std::vector<std::string> subcommand_args(const std::string& sub, const std::string& map) {
    std::vector<std::string> a{sub, map, "--format", "json"};
    if (sub == "jury") a.insert(a.end(), {"--point", "0,1"});
    if (sub == "orbits") a.insert(a.end(), {"--grid-extent", "2", "--grid-step", "0.5"});
    return a;
}

const char* kSubcommands[] = {"analyze", "normal-form", "symmetry", "witness", "orbits", "jury"};

// Minimal structural schema: required keys with JSON types.
void expect_keys(const json& j, std::initializer_list<std::pair<const char*, json::value_t>> keys,
                 const std::string& ctx) {
    for (const auto& [k, t] : keys) {
        ASSERT_TRUE(j.contains(k)) << ctx << ": missing " << k;
        if (t != json::value_t::null) EXPECT_EQ(j.at(k).type(), t) << ctx << ": key " << k;
    }
}

}  // namespace

TEST(Cli, AnalyzeJsonSpecExample) {
    CliRun r = run({"analyze", "(x/2 + y^2, y/3 + y^3)", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    json j = json::parse(r.out);
    EXPECT_EQ(j["status"], "HypothesesFail");
    EXPECT_EQ(j["certificate"]["kind"], "NonProportional");
    EXPECT_TRUE(j.contains("version"));
}

TEST(Cli, SymmetrySpecExample) {
    CliRun r = run({"symmetry", "(x/2 - y^3, y/2 + x^3)"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "Z4");
}

TEST(Cli, JurySpecExample) {
    CliRun r = run({"jury", "(x/2 + y^2, y/3 + y^3)", "--point", "0,1"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "inside=false trace=23/6 det=5/3\n");
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({"analyze", "(x^-1, y)"}).code, 2);
    EXPECT_EQ(run({"analyze", "/nonexistent/maps.txt"}).code, 2);
    EXPECT_EQ(run({"analyze"}).code, 2);
    EXPECT_EQ(run({"frobnicate", "(x, y)"}).code, 2);
    EXPECT_EQ(run({"jury", "(x, y)", "--point", "1"}).code, 2);
    EXPECT_EQ(run({"orbits", "(x, y)", "--conv-tol", "2e6"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
    // a failing verdict is still a successful run
    EXPECT_EQ(run({"analyze", "(2*x, y)"}).code, 0);
}

TEST(Cli, ParseErrorReportsPosition) {
    CliRun r = run({"normal-form", "(x^-1, y)"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("NonIntegerExponent at position 3"), std::string::npos) << r.err;
}

TEST(Cli, BatchFromStdin) {
    CliRun r = run({"analyze", "-", "--format", "json", "--no-witness"},
                "# corpus\n(x/2, y/3 + x^2)\n\n(x/(y+1), y)\n(2*x, y)\n");
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("line 4:"), std::string::npos) << r.err;
    std::istringstream lines(r.out);
    std::string line;
    std::vector<json> docs;
    while (std::getline(lines, line)) docs.push_back(json::parse(line));
    ASSERT_EQ(docs.size(), 2u);
    EXPECT_EQ(docs[0]["status"], "HypothesesHold");
    EXPECT_EQ(docs[1]["status"], "HypothesesFail");
}

TEST(Cli, BatchFromFile) {
    fs::path p = fs::temp_directory_path() / ("dmyq_cli_batch_" + std::to_string(::getpid()) + ".txt");
    std::ofstream(p) << "(x/2 - y^3, y/2 + x^3)\n(x/2 + y^2, y/3)\n";
    CliRun r = run({"symmetry", p.string()});
    fs::remove(p);
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("Z4"), std::string::npos);
    EXPECT_NE(r.out.find("Z2 (reflection)"), std::string::npos);
}

TEST(Cli, OrbitsCsv) {
    fs::path p = fs::temp_directory_path() / ("dmyq_cli_orbits_" + std::to_string(::getpid()) + ".csv");
    CliRun r = run({"orbits", "(2*x, y/2)", "--grid-extent", "1", "--grid-step", "1", "--csv", p.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    std::string csv = slurp(p);
    fs::remove(p);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "x0_x,x0_y,outcome,steps");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);
}

TEST(Cli, JsonOutputsMatchSchemas) {
    using vt = json::value_t;
    for (const auto& fx : kFixtures)
        for (const char* sub : kSubcommands) {
            CliRun r = run(subcommand_args(sub, fx.map));
            ASSERT_EQ(r.code, 0) << sub << " " << fx.name << ": " << r.err;
            json j = json::parse(r.out);
            std::string ctx = std::string(sub) + " " + fx.name;
            expect_keys(j, {{"version", vt::string}, {"map", vt::string}}, ctx);
            std::string s = sub;
            if (s == "analyze") {
                expect_keys(j, {{"status", vt::string}, {"certificate", vt::object}, {"symmetry", vt::object},
                                {"witness", vt::null}, {"witness_exhausted", vt::boolean}, {"notes", vt::array}},
                            ctx);
                expect_keys(j["certificate"], {{"kind", vt::string}}, ctx);
            } else if (s == "normal-form") {
                expect_keys(j, {{"decomposed", vt::boolean}}, ctx);
                expect_keys(j, {{j["decomposed"].get<bool>() ? "normal_form" : "failure", vt::object}}, ctx);
            } else if (s == "symmetry") {
                expect_keys(j, {{"classification", vt::string}, {"label", vt::string}, {"n", vt::null},
                                {"reflection_axis", vt::null}, {"generators", vt::array}},
                            ctx);
            } else if (s == "witness") {
                expect_keys(j, {{"witness", vt::null}}, ctx);
                if (!j["witness"].is_null())
                    expect_keys(j["witness"], {{"point", vt::array}, {"certified", vt::boolean}}, ctx);
            } else if (s == "orbits") {
                expect_keys(j, {{"basin", vt::object}}, ctx);
                expect_keys(j["basin"], {{"counts", vt::object}, {"exceptions", vt::array}, {"grid_size", vt::null}},
                            ctx);
            } else if (s == "jury") {
                expect_keys(j, {{"inside", vt::boolean}, {"trace", vt::string}, {"det", vt::string},
                                {"point", vt::array}},
                            ctx);
            }
        }
}

// Set DMYQ_UPDATE_GOLDEN=1 to rewrite the files after an intended output change.
TEST(Cli, GoldenFiles) {
    const bool update = std::getenv("DMYQ_UPDATE_GOLDEN") != nullptr;
    for (const auto& fx : kFixtures)
        for (const char* sub : kSubcommands) {
            CliRun r = run(subcommand_args(sub, fx.map));
            ASSERT_EQ(r.code, 0) << r.err;
            std::string got = strip_version(r.out);
            fs::path golden = fs::path(DMYQ_GOLDEN_DIR) / (std::string(fx.name) + "." + sub + ".json");
            if (update) {
                std::ofstream(golden, std::ios::binary) << got;
                continue;
            }
            ASSERT_TRUE(fs::exists(golden)) << golden;
            EXPECT_EQ(got, slurp(golden)) << golden;
        }
}
