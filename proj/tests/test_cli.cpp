#include <doctest.h>

#include "proflow/cli.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int rc = -1;
    std::string out;
    std::string err;
};

RunResult run(std::vector<std::string> args) {
    args.insert(args.begin(), "proflow");
    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());

    std::ostringstream out, err;
    std::streambuf* old_out = std::cout.rdbuf(out.rdbuf());
    std::streambuf* old_err = std::cerr.rdbuf(err.rdbuf());
    RunResult res;
    res.rc = proflow::run_cli(static_cast<int>(argv.size()), argv.data());
    std::cout.rdbuf(old_out);
    std::cerr.rdbuf(old_err);
    res.out = out.str();
    res.err = err.str();
    return res;
}

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / ("proflow_cli_" + name);
}

std::string slurp(const fs::path& p) {
    std::ifstream ifs(p, std::ios::binary);
    std::ostringstream os;
    os << ifs.rdbuf();
    return os.str();
}

int count_lines(const std::string& text) {
    int n = 0;
    for (char c : text) n += (c == '\n') ? 1 : 0;
    return n;
}

}  // namespace

TEST_CASE("cli: exit-code contract") {
    CHECK(run({"bogus"}).rc == 2);
    CHECK(run({"tables", "w", "--nope"}).rc == 2);
    CHECK(run({"tables"}).rc == 2);          // missing sub-subcommand
    CHECK(run({"--help"}).rc == 0);
    CHECK(run({"specialfn", "eval", "--fn", "zeta", "--re", "1"}).rc == 2);
    CHECK(run({"ff", "table", "--p", "7"}).rc == 2);   // -1 not a square
    CHECK(run({"ff", "enum1d", "--p", "11"}).rc == 2); // beyond the search range
    CHECK(run({"plot", "vector-field", "--kind", "Lambda", "--n", "2", "--out",
               "/nonexistent/dir/x.csv"})
              .rc == 1);
    CHECK(run({"flow", "eval", "--kind", "Lambda", "--x", "0.4;0", "--y", "1"})
              .rc == 2);
}

TEST_CASE("cli: coefficient tables match their golden files") {
    CHECK(run({"tables", "w", "--max", "15", "--check"}).rc == 0);
    CHECK(run({"series", "skew", "--terms", "24", "--check"}).rc == 0);

    const RunResult small = run({"tables", "w", "--max", "3"});
    CHECK(small.rc == 0);
    CHECK(small.out ==
          "n  j  w_n(t)\n"
          "1  0  1*t^1\n"
          "2  0  1*t^2 + -2*t^1\n"
          "3  0  1*t^3 + -1*t^2 + 1*t^1\n");

    const RunResult skew = run({"series", "skew", "--terms", "24"});
    CHECK(skew.rc == 0);
    CHECK(skew.out.find("24  425993769/84721\n") != std::string::npos);

    // bless/check round trip in a scratch golden directory
    const fs::path dir = temp_file("golden_dir");
    fs::create_directories(dir);
    CHECK(run({"--golden-dir", dir.string(), "tables", "w", "--max", "4",
               "--bless"})
              .rc == 0);
    CHECK(run({"--golden-dir", dir.string(), "tables", "w", "--max", "4",
               "--check"})
              .rc == 0);
    CHECK(run({"--golden-dir", dir.string(), "tables", "w", "--max", "5",
               "--check"})
              .rc == 1);  // missing golden for this size
    fs::remove_all(dir);
}

TEST_CASE("cli: special function evaluation and constants") {
    const RunResult c = run({"specialfn", "constants"});
    CHECK(c.rc == 0);
    CHECK(c.out ==
          "pi3 = 5.299916250856\n"
          "Pi  = 5.513701576711\n");

    const RunResult cm0 = run({"specialfn", "eval", "--fn", "cm", "--re", "0"});
    CHECK(cm0.rc == 0);
    CHECK(cm0.out.find("cm(0+0i) = 1+0i") == 0);

    const RunResult w0 = run({"specialfn", "eval", "--fn", "W", "--re", "0"});
    CHECK(w0.out.find("W(0+0i) = 1+0i") == 0);
}

TEST_CASE("cli: flow evaluation prints both coordinates") {
    const RunResult id = run({"flow", "eval", "--kind", "identity", "--x",
                              "0.25", "--y", "-0.5,1"});
    CHECK(id.rc == 0);
    CHECK(id.out == "identity(0.25, -0.5,1) = 0.25+0i . -0.5+1i\n");

    CHECK(run({"flow", "eval", "--kind", "phi_3", "--x", "1", "--y", "2"}).rc ==
          0);
}

TEST_CASE("cli: verify emits the JSON report schema deterministically") {
    const fs::path report = temp_file("verify.json");
    const RunResult r = run({"verify", "flow", "--kind", "exp", "--seed", "5",
                             "--points", "8", "--report", report.string()});
    CHECK(r.rc == 0);
    const json doc = json::parse(r.out);
    CHECK(doc.at("all_pass").get<bool>());
    CHECK(doc.at("seed").get<int>() == 5);
    CHECK(doc.at("points").get<int>() == 8);
    CHECK(doc.at("tool_version").get<std::string>() == "proflow 1.0.0");
    REQUIRE(!doc.at("entries").empty());
    for (const auto& e : doc.at("entries")) {
        CHECK(e.contains("flow"));
        CHECK(e.contains("check"));
        CHECK(e.contains("points"));
        CHECK(e.contains("max_residual"));
        CHECK(e.contains("tolerance"));
        CHECK(e.at("pass").get<bool>());
    }
    // the file holds the same document, and reruns are byte-identical
    CHECK(json::parse(slurp(report)) == doc);
    const RunResult r2 = run({"verify", "flow", "--kind", "exp", "--seed", "5",
                              "--points", "8"});
    CHECK(r2.out == r.out);
    fs::remove(report);

    const RunResult all = run({"verify", "all", "--seed", "11", "--points", "5"});
    CHECK(all.rc == 0);
    const json alldoc = json::parse(all.out);
    CHECK(alldoc.at("all_pass").get<bool>());
    bool saw_lambda = false;
    for (const auto& e : alldoc.at("entries"))
        saw_lambda = saw_lambda || e.at("flow").get<std::string>() == "Lambda";
    CHECK(saw_lambda);
}

TEST_CASE("cli: curve subcommands") {
    CHECK(run({"curve", "torsion", "--c", "1", "--check"}).rc == 0);
    CHECK(run({"curve", "torsion", "--c", "2,1", "--check"}).rc == 0);
    const RunResult t = run({"curve", "torsion", "--c", "1"});
    CHECK(t.out.find("Q6    6") != std::string::npos);

    const RunResult v = run({"curve", "verify", "--c", "2,1", "--triples", "6",
                             "--points", "6"});
    CHECK(v.rc == 0);
    CHECK(v.out.find("associativity            pass") != std::string::npos);
    CHECK(v.out.find("FAIL") == std::string::npos);
}

TEST_CASE("cli: identities suite reports certificates") {
    const fs::path report = temp_file("identities.json");
    const RunResult r = run({"identities", "run", "--all", "--report",
                             report.string()});
    CHECK(r.rc == 0);
    CHECK(r.out.find("quotient   symm1          pass") != std::string::npos);
    CHECK(r.out.find("count=10") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);

    const json doc = json::parse(slurp(report));
    CHECK(doc.at("all_pass").get<bool>());
    bool saw_symm1 = false;
    for (const auto& e : doc.at("entries")) {
        if (e.at("case").get<std::string>() == "symm1") {
            saw_symm1 = true;
            CHECK(e.at("certificate_terms").get<int>() == 93);
            CHECK_FALSE(e.at("plain_zero").get<bool>());
        }
    }
    CHECK(saw_symm1);
    fs::remove(report);
}

TEST_CASE("cli: finite-field table and enumeration") {
    CHECK(run({"ff", "table", "--p", "5", "--check"}).rc == 0);
    const RunResult t = run({"ff", "table", "--p", "5"});
    CHECK(t.out.find("x=0: 0•0 1•∞ ∞•1 2•0 1•4 4•2\n") != std::string::npos);
    CHECK(t.out.find("x=∞: 2•4 3•2 4•∞ 4•0 0•3 1•1\n") != std::string::npos);

    const RunResult e = run({"ff", "enum1d", "--p", "3", "--json"});
    CHECK(e.rc == 0);
    const json doc = json::parse(e.out);
    CHECK(doc.at("p").get<int>() == 3);
    CHECK(doc.at("count").get<int>() == 5);
    int zero = 0, infinite = 0;
    std::vector<int> as;
    for (const auto& f : doc.at("flows")) {
        const std::string kind = f.at("kind").get<std::string>();
        CHECK(f.at("table").size() == 4);
        if (kind == "zero") ++zero;
        if (kind == "infinity") ++infinite;
        if (kind == "moebius") as.push_back(f.at("a").get<int>());
    }
    CHECK(zero == 1);
    CHECK(infinite == 1);
    CHECK(as.size() == 3);
}

TEST_CASE("cli: plot exports obey schema and determinism") {
    const fs::path vf = temp_file("vf.csv");
    CHECK(run({"plot", "vector-field", "--kind", "Lambda", "--n", "5", "--out",
               vf.string()})
              .rc == 0);
    const std::string vf_text = slurp(vf);
    CHECK(count_lines(vf_text) == 26);  // header + 25 rows
    CHECK(vf_text.rfind("x,y,u,v\n", 0) == 0);
    {
        // arrows are unit length (or exactly zero on the singular set)
        std::istringstream is(vf_text);
        std::string line;
        std::getline(is, line);  // header
        while (std::getline(is, line)) {
            double x, y, u, v;
            REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &x, &y, &u,
                                &v) == 4);
            const double norm = std::hypot(u, v);
            CHECK((std::fabs(norm - 1.0) < 1e-9 || norm == 0.0));
        }
    }

    const fs::path sg = temp_file("sg.csv");
    const fs::path svg = temp_file("sg.svg");
    CHECK(run({"plot", "sign-grid", "--kind", "Lambda", "--n", "4", "--range",
               "2", "--out", sg.string(), "--svg", svg.string()})
              .rc == 0);
    const std::string sg_text = slurp(sg);
    CHECK(count_lines(sg_text) == 17);
    CHECK(sg_text.rfind("x,y,sign\n", 0) == 0);
    const fs::path stem = sg.parent_path() / "proflow_cli_sg";
    const std::string c0 = slurp(fs::path(stem.string() + "_overlay_c0.csv"));
    const std::string ec = slurp(fs::path(stem.string() + "_overlay_curve.csv"));
    CHECK(c0.rfind("x,y\n", 0) == 0);
    CHECK(ec.rfind("x,y\n", 0) == 0);
    CHECK(count_lines(c0) > 100);
    CHECK(count_lines(ec) > 100);
    const std::string svg_text = slurp(svg);
    CHECK(svg_text.rfind("<svg", 0) == 0);

    // reruns are byte-identical
    const fs::path sg2 = temp_file("sg2.csv");
    CHECK(run({"plot", "sign-grid", "--kind", "Lambda", "--n", "4", "--range",
               "2", "--out", sg2.string()})
              .rc == 0);
    CHECK(slurp(sg2) == sg_text);

    // single-cell file at resolution 1
    const fs::path one = temp_file("one.csv");
    CHECK(run({"plot", "sign-grid", "--kind", "Lambda", "--n", "1", "--range",
               "1", "--out", one.string()})
              .rc == 0);
    CHECK(count_lines(slurp(one)) == 2);

    for (const auto& p :
         {vf, sg, svg, sg2, one, fs::path(stem.string() + "_overlay_c0.csv"),
          fs::path(stem.string() + "_overlay_curve.csv")})
        fs::remove(p);
    const fs::path stem2 = sg2.parent_path() / "proflow_cli_sg2";
    fs::remove(fs::path(stem2.string() + "_overlay_c0.csv"));
    fs::remove(fs::path(stem2.string() + "_overlay_curve.csv"));
}
