#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "json.hpp"

#include "cquant/allocation.hpp"
#include "cquant/commands.hpp"
#include "cquant/io.hpp"
#include "cquant/scenarios.hpp"

using namespace cquant;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

std::string data(const std::string& name) { return std::string(CQUANT_TEST_DATA) + "/" + name; }

fs::path scratch() {
    const fs::path dir = fs::temp_directory_path() / "cquant_test_cli";
    fs::create_directories(dir);
    return dir;
}

std::string write_file(const std::string& name, const std::string& text) {
    const fs::path p = scratch() / name;
    std::ofstream(p, std::ios::binary) << text;
    return p.string();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run solve_file(const std::string& path, GlobalOptions g = {}) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cmd_solve(path, g, out, err);
    return {code, out.str(), err.str()};
}

std::string parse_message(const std::string& text) {
    try {
        parse_problem(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    return {};
}

const char* kMinimal = R"({
  "schema_version": 1,
  "measure": [{"type": "segment", "p0": [0, 0], "p1": [1, 0]}],
  "constraints": [],
  "beta": [[0, 0]],
  "n": 2
})";

}  // namespace

TEST_CASE("parse a minimal problem") {
    const auto pf = parse_problem(kMinimal);
    CHECK(pf.problem.n == 2);
    CHECK(pf.problem.beta.size() == 1);
    CHECK(pf.problem.measure.total_length() == 1.0);
    CHECK(pf.solver.restarts == 16);
    CHECK(pf.solver.rng_seed == 42);
}

TEST_CASE("syntax errors carry line and column") {
    const std::string msg = parse_message("{\n  \"n\": 2,\n  \"beta\": [1, 2,\n}");
    CHECK(msg.find("line 4") != std::string::npos);
    CHECK(msg.find("column") != std::string::npos);
}

TEST_CASE("field errors carry the field path") {
    std::string bad = kMinimal;
    bad.replace(bad.find("\"p1\": [1, 0]"), 12, "\"p1\": [1, \"x\"]");
    CHECK(parse_message(bad).find("measure[0].p1[1]") != std::string::npos);

    const std::string arc = R"({"schema_version": 1, "measure": [{"type": "arc", "center": [0, 0], "radius": -1,
      "theta0": 0, "theta1": 1}], "constraints": [], "beta": [], "n": 1})";
    CHECK(parse_message(arc).find("measure[0]") != std::string::npos);

    std::string missing = kMinimal;
    missing.replace(missing.find("\"n\": 2"), 6, "\"m\": 2");
    const std::string m = parse_message(missing);
    CHECK(m.find("unknown field 'm'") != std::string::npos);

    std::string few = kMinimal;
    few.replace(few.find("\"n\": 2"), 6, "\"n\": 0");
    CHECK(parse_message(few).find("n:") != std::string::npos);
}

TEST_CASE("unknown fields are rejected at every level") {
    std::string top = kMinimal;
    top.insert(1, "\"colour\": 1,");
    CHECK(parse_message(top).find("unknown field 'colour'") != std::string::npos);
    std::string inner = kMinimal;
    inner.replace(inner.find("\"p0\""), 4, "\"extra\": 0, \"p0\"");
    CHECK(parse_message(inner).find("measure[0]: unknown field 'extra'") != std::string::npos);
}

TEST_CASE("problem documents round-trip") {
    for (const auto& p : {semicircle_problem(5), triangle_problem(6, true), exam1_problem(4), remark54_problem(9)}) {
        SolverOptions o;
        o.restarts = 3;
        o.rng_seed = 7;
        const auto back = parse_problem(problem_to_json(p, o).dump());
        CHECK(back.problem.n == p.n);
        CHECK(back.problem.beta.size() == p.beta.size());
        CHECK(back.problem.constraints.size() == p.constraints.size());
        CHECK(back.problem.measure.total_length() == p.measure.total_length());
        CHECK(back.solver.restarts == 3);
        CHECK(back.solver.rng_seed == 7);
        CHECK(problem_to_json(back.problem, back.solver).dump() == problem_to_json(p, o).dump());
    }
}

TEST_CASE("solve: semicircle with four points") {
    const auto r = solve_file(data("semicircle_n4.json"));
    REQUIRE(r.code == kExitOk);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["distortion"].get<double>() ==
          Approx((-24.0 * std::sqrt(2.0) + 12.0 * kPi + 1.0) / (12.0 + 6.0 * kPi)).epsilon(1e-9));
    REQUIRE(doc["points"].size() == 4);
    bool centre = false;
    bool top = false;
    for (const auto& p : doc["points"]) {
        const double x = p["x"].get<double>();
        const double y = p["y"].get<double>();
        centre = centre || (std::abs(x) < 1e-6 && std::abs(y) < 1e-6);
        top = top || (std::abs(x) < 1e-6 && std::abs(y - 1.0) < 1e-6);
    }
    CHECK(centre);
    CHECK(top);
}

TEST_CASE("solve: steep line instance is degenerate") {
    const auto r = solve_file(data("exam2_n3.json"));
    CHECK(r.code == kExitDegenerate);
    CHECK(r.err.find("degenerate") != std::string::npos);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["degenerate"] == true);
    CHECK(doc["degenerate_points"].size() == 2);
}

TEST_CASE("solve: triangle with three points is the conditional set") {
    const auto r = solve_file(data("triangle_n3.json"));
    REQUIRE(r.code == kExitOk);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["distortion"].get<double>() == Approx(1.0 / 12.0).epsilon(1e-12));
    for (const auto& p : doc["points"]) CHECK(p["tag"] == "beta");
}

TEST_CASE("solve: errors exit with 1") {
    CHECK(solve_file(data("does_not_exist.json")).code == kExitError);
    const auto bad = solve_file(write_file("bad.json", "{\"n\": }"));
    CHECK(bad.code == kExitError);
    CHECK(bad.err.find("line 1") != std::string::npos);
}

TEST_CASE("exit codes across the gallery") {
    const std::vector<std::pair<std::string, int>> expected{
        {"semicircle_n3.json", kExitOk},   {"semicircle_n4.json", kExitOk},   {"semicircle_n7.json", kExitOk},
        {"triangle_n3.json", kExitOk},     {"triangle_n12.json", kExitOk},    {"exam1_n4.json", kExitOk},
        {"exam2_n3.json", kExitDegenerate}, {"remark54_n50.json", kExitOk},    {"remark54_n51.json", kExitDegenerate},
        {"interval_left_n2.json", kExitOk}};
    for (const auto& [file, code] : expected) {
        INFO(file);
        CHECK(solve_file(data(file)).code == code);
    }
}

TEST_CASE("closed-form command") {
    std::ostringstream out;
    std::ostringstream err;
    REQUIRE(cmd_closed_form("semicircle", 10, {}, out, err) == kExitOk);
    auto doc = nlohmann::json::parse(out.str());
    const int n1 = semicircle_allocate(10).parts[0];
    CHECK(doc["allocation"][0] == n1);
    CHECK(doc["points"].size() == 10);

    out.str("");
    REQUIRE(cmd_closed_form("triangle", 12, {}, out, err) == kExitOk);
    doc = nlohmann::json::parse(out.str());
    CHECK(doc["allocation"] == nlohmann::json::array({5, 5, 5}));
    CHECK(doc["error"].get<double>() == Approx(1.0 / 192.0).epsilon(1e-15));

    out.str("");
    REQUIRE(cmd_closed_form("interval-left", 2, {}, out, err) == kExitOk);
    doc = nlohmann::json::parse(out.str());
    CHECK(doc["error"].get<double>() == Approx(1.0 / 27.0).epsilon(1e-15));
    CHECK(doc["points"][1]["x"].get<double>() == Approx(2.0 / 3.0).epsilon(1e-15));

    CHECK(cmd_closed_form("hexagon", 4, {}, out, err) == kExitError);
    CHECK(cmd_closed_form("triangle", 2, {}, out, err) == kExitError);
}

TEST_CASE("sweep command") {
    std::ostringstream out;
    std::ostringstream err;
    REQUIRE(cmd_sweep("triangle", 3, 300, {}, {}, "-", out, err) == kExitOk);
    std::istringstream in(out.str());
    std::string header;
    std::getline(in, header);
    CHECK(header == kSweepHeader);
    std::istringstream again(out.str());
    const auto rows = read_sweep_csv(again);
    REQUIRE(rows.size() == 298);
    for (const auto& r : rows) {
        const int k = r.n / 3;
        const int e = r.n % 3;
        // (n1 - 1, n2 - 1, n3 - 1) is (k, k, k) plus one on the first e sides.
        double sum = 0.0;
        for (int j = 0; j < 3; ++j) {
            const double m = k + (j < e ? 1 : 0);
            sum += 1.0 / (m * m);
        }
        CHECK(r.error == Approx(sum / 36.0).epsilon(1e-15));
        CHECK(r.wall_time_ms == 0.0);
    }

    out.str("");
    REQUIRE(cmd_sweep("exam1", 3, 200, {}, {}, "-", out, err) == kExitOk);
    std::istringstream ex(out.str());
    for (const auto& r : read_sweep_csv(ex)) CHECK(r.error == exam1_conditional(r.n).error);

    out.str("");
    REQUIRE(cmd_sweep("semicircle", 3, 100, {}, {}, "-", out, err) == kExitOk);
    std::istringstream se(out.str());
    for (const auto& r : read_sweep_csv(se)) CHECK(r.allocation == semicircle_allocate_exhaustive(r.n).parts);

    out.str("");
    REQUIRE(cmd_sweep("exam1", 3, 10, {}, {.printed = true}, "-", out, err) == kExitOk);
    std::istringstream pr(out.str());
    for (const auto& r : read_sweep_csv(pr)) CHECK(r.error == printed::exam1_error(r.n));

    CHECK(cmd_sweep("triangle", 3, 10, {}, {}, "/nonexistent_dir/x.csv", out, err) == kExitError);
    CHECK(cmd_sweep("triangle", 10, 3, {}, {}, "-", out, err) == kExitError);
}

TEST_CASE("sweep output is byte-identical between runs") {
    const std::string a = (scratch() / "a.csv").string();
    const std::string b = (scratch() / "b.csv").string();
    std::ostringstream out;
    std::ostringstream err;
    for (const char* s : {"triangle", "semicircle", "exam1"}) {
        REQUIRE(cmd_sweep(s, 3, 120, {}, {}, a, out, err) == kExitOk);
        REQUIRE(cmd_sweep(s, 3, 120, {}, {}, b, out, err) == kExitOk);
        CHECK(read_file(a) == read_file(b));
    }
}

TEST_CASE("asymptotics command") {
    std::ostringstream out;
    std::ostringstream err;
    const std::string csv = (scratch() / "tri.csv").string();
    REQUIRE(cmd_sweep("triangle", 3, 300, {}, {}, csv, out, err) == kExitOk);
    REQUIRE(cmd_asymptotics(csv, 1.0, 0.0, {}, DimensionMethod::slope, out, err) == kExitOk);
    auto doc = nlohmann::json::parse(out.str());
    CHECK(doc["dim_lower"].get<double>() >= 0.98);
    CHECK(doc["dim_upper"].get<double>() <= 1.02);
    CHECK(doc["coeff_lower"].get<double>() >= 0.735);
    CHECK(doc["coeff_upper"].get<double>() <= 0.765);

    // V_inf = 0 with exponent 2, so D = 1; window of 100 entries.
    std::string synth = std::string(kSweepHeader) + "\n";
    for (int n = 1; n <= 200; ++n) {
        char line[96];
        std::snprintf(line, sizeof line, "%d,%.17g,,0.000\n", n, 1.0 / (double(n) * n));
        synth += line;
    }
    const std::string sp = write_file("synthetic.csv", synth);
    out.str("");
    REQUIRE(cmd_asymptotics(sp, 1.0, std::nullopt, {.tail_window = 100}, DimensionMethod::slope, out, err) == kExitOk);
    doc = nlohmann::json::parse(out.str());
    CHECK(std::abs(doc["dim_lower"].get<double>() - 1.0) <= 0.02);
    CHECK(std::abs(doc["dim_upper"].get<double>() - 1.0) <= 0.02);
    CHECK(doc["tail_window"] == 100);

    const std::string short_csv = write_file("short.csv", std::string(kSweepHeader) + "\n1,1,,0\n2,0.5,,0\n");
    CHECK(cmd_asymptotics(short_csv, 1.0, std::nullopt, {}, DimensionMethod::slope, out, err) == kExitError);
    CHECK(cmd_asymptotics(data("missing.csv"), 1.0, std::nullopt, {}, DimensionMethod::slope, out, err) ==
          kExitError);
}

TEST_CASE("render: solve then draw") {
    for (const char* file : {"semicircle_n7.json", "triangle_n12.json", "triangle_n3.json"}) {
        INFO(file);
        const auto r = solve_file(data(file));
        REQUIRE(r.code == kExitOk);
        const std::string result = write_file(std::string(file) + ".result.json", r.out);
        std::ostringstream svg1;
        std::ostringstream svg2;
        std::ostringstream err;
        REQUIRE(cmd_render(result, "-", svg1, err) == kExitOk);
        REQUIRE(cmd_render(result, "-", svg2, err) == kExitOk);
        CHECK(svg1.str() == svg2.str());
        CHECK(svg1.str().find("<svg") != std::string::npos);
        const auto doc = nlohmann::json::parse(r.out);
        std::size_t circles = 0;
        for (std::size_t pos = 0; (pos = svg1.str().find("<circle", pos)) != std::string::npos; ++pos) ++circles;
        CHECK(circles == doc["points"].size());
    }
}

TEST_CASE("render: arc layout of the seven-point semicircle") {
    const auto r = solve_file(data("semicircle_n7.json"));
    const auto doc = nlohmann::json::parse(r.out);
    int base = 0;
    int arc = 0;
    for (const auto& p : doc["points"]) {
        if (p["tag"] == "beta") continue;
        const double x = p["x"].get<double>();
        const double y = p["y"].get<double>();
        if (std::abs(y) < 1e-9) {
            ++base;
        } else {
            ++arc;
            CHECK(std::hypot(x, y) == Approx(1.0).epsilon(1e-9));
        }
    }
    const auto alloc = semicircle_allocate(7);
    CHECK(base == alloc.parts[0] - 2);
    CHECK(arc == alloc.parts[1] - 2);
}

TEST_CASE("render: closed-form documents and errors") {
    std::ostringstream out;
    std::ostringstream err;
    REQUIRE(cmd_closed_form("triangle", 12, {}, out, err) == kExitOk);
    const std::string cf = write_file("tri12_cf.json", out.str());
    std::ostringstream svg;
    CHECK(cmd_render(cf, "-", svg, err) == kExitOk);
    CHECK(svg.str().find("</svg>") != std::string::npos);
    CHECK(cmd_render(write_file("garbage.json", "[1, 2"), "-", svg, err) == kExitError);
}

TEST_CASE("verify command") {
    std::ostringstream out;
    std::ostringstream err;
    CHECK(cmd_verify("interval-left", 1, 4, {}, {}, 1e-6, out, err) == kExitOk);
    CHECK(out.str().rfind("n,closed_form,solver,rel_diff,ok\n", 0) == 0);
    out.str("");
    CHECK(cmd_verify("semicircle", 3, 6, {}, {}, 1e-6, out, err) == kExitOk);
    CHECK(out.str().find(",no\n") == std::string::npos);
}
