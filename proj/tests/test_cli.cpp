#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracbern/cli.hpp"
#include "fracbern/output.hpp"

using namespace fracbern;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

std::string temp_path(const std::string& name) { return "/tmp/fracbern_test_" + name; }

}  // namespace

TEST_CASE("number formatting") {
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(std::stod(format_number(std::numbers::pi)) == std::numbers::pi);
    CHECK(csv_table({"a", "b"}, {{"1", "x,y"}}) == "a,b\n1,\"x,y\"\n");
}

TEST_CASE("constant one-free") {
    const Run r = run({"constant", "one-free", "--alpha", "1", "--center", "0", "--radius", "0.5"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0][3] == "constant");
    CHECK(std::abs(std::stod(rows[1][3]) - 4.0 / std::numbers::pi) < 1e-10);
}

TEST_CASE("constant two-free") {
    const Run r = run({"constant", "two-free", "--alpha", "1", "--center", "0", "--radius", "1", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    const double v = j["data"]["constant"];
    CHECK(v >= 0.7958);
    CHECK(v <= 1.03);
    CHECK(j["meta"]["config"]["quad_tol"] == 1e-10);
    CHECK(j["meta"]["config"]["grid"] == 128);
}

TEST_CASE("usage and domain errors exit 2") {
    CHECK(run({"constant", "one-free", "--alpha", "3"}).code == 2);
    CHECK(run({"curve", "one-free", "--grid", "0"}).code == 2);
    CHECK(run({"constant", "three-free"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"solve", "one-free"}).code == 2);  // no lambda
    CHECK(run({"constant", "one-free", "--radius", "-1"}).code == 2);
    CHECK(run({"constant", "one-free", "--format", "xml"}).code == 2);
    CHECK(run({"constant", "one-free", "--alpha", "abc"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("curve one-free matches the closed form") {
    const Run r = run({"curve", "one-free", "--alpha", "1", "--grid", "64"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 65);
    CHECK(rows[0] == std::vector<std::string>{"a", "value"});
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double a = std::stod(rows[i][0]);
        CHECK(std::abs(std::stod(rows[i][1]) - 2.0 / (std::numbers::pi * std::sqrt(a * (1.0 - a)))) < 1e-9);
    }
}

TEST_CASE("curve two-free with plot") {
    const std::string svg = temp_path("psi.svg");
    std::remove(svg.c_str());
    const Run r = run({"curve", "two-free", "--alpha", "1", "--grid", "128", "--plot", svg});
    REQUIRE(r.code == 0);
    CHECK(parse_csv(r.out).size() == 129);
    std::ifstream f(svg);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str().find("<svg") == 0);
    CHECK(ss.str().find("width=\"800\" height=\"600\"") != std::string::npos);
    CHECK(ss.str().find("<polyline") != std::string::npos);
}

TEST_CASE("solve one-free") {
    const Run r = run({"solve", "one-free", "--alpha", "1", "--center", "0", "--radius", "1", "--lambda", "1"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 3);
    const double x = std::sqrt(1.0 - 8.0 / (std::numbers::pi * std::numbers::pi));
    CHECK(std::abs(std::stod(rows[1][4]) + x) < 1e-7);
    CHECK(std::abs(std::stod(rows[2][4]) - x) < 1e-7);

    const Run none = run({"solve", "one-free", "--alpha", "1", "--lambda", "0.5"});
    CHECK(none.code == 0);
    CHECK(parse_csv(none.out).size() == 1);
}

TEST_CASE("solve two-free gives two symmetric K") {
    const Run r = run({"solve", "two-free", "--alpha", "1", "--center", "0", "--radius", "1", "--lambda", "1.2",
                       "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["data"]["solutions"].size() == 2);
    for (const auto& s : j["data"]["solutions"]) {
        const double lo = s["k"][0], hi = s["k"][1];
        CHECK(lo == -hi);
        CHECK(s["free_points"].size() == 2);
    }
}

TEST_CASE("profile table") {
    const Run r = run({"profile", "one-free", "--alpha", "1", "--lambda", "1.2"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    CHECK(rows[0] == std::vector<std::string>{"x", "u", "solution_index"});
    CHECK(rows.back()[2] == "2");
}

TEST_CASE("bounds") {
    const Run r = run({"bounds", "--alpha", "1"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    CHECK(std::stod(rows[1][1]) == doctest::Approx(0.7957747).epsilon(1e-7));
    CHECK(std::stod(rows[1][2]) == doctest::Approx(1.1253954).epsilon(1e-7));
    const auto half = parse_csv(run({"bounds", "--alpha", "0.5"}).out);
    CHECK(std::stod(half[1][1]) < std::stod(half[1][2]));
    const Run v = run({"bounds", "--alpha", "1", "--verify"});
    REQUIRE(v.code == 0);
    CHECK(parse_csv(v.out)[1][4] == "true");
}

TEST_CASE("proofcheck JSON") {
    const Run r = run({"proofcheck", "--grid", "100"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["data"]["conclusion_holds"] == true);
    CHECK(j["data"]["f1_infimum_estimate"].get<double>() >= 1.1582 - 1e-3);
    CHECK(j["data"]["f2_at_034"].get<double>() < 1.03);
    CHECK(nlohmann::json::parse(j.dump()) == j);
}

TEST_CASE("determinism") {
    const std::vector<std::string> args{"curve", "two-free", "--alpha", "0.5", "--grid", "16", "--format", "json"};
    CHECK(run(args).out == run(args).out);
    const std::vector<std::string> csv{"solve", "one-free", "--alpha", "0.7", "--lambda", "2"};
    CHECK(run(csv).out == run(csv).out);
}

TEST_CASE("config file with flag override") {
    const std::string path = temp_path("config.ini");
    {
        std::ofstream f(path);
        f << "alpha = 1\nradius = 0.5\nquad-tol = 1e-9\nformat = json\n";
    }
    const Run r = run({"constant", "one-free", "--config", path, "--radius", "2"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["meta"]["config"]["radius"] == 2.0);
    CHECK(j["meta"]["config"]["alpha"] == 1.0);
    CHECK(j["meta"]["config"]["quad_tol"] == 1e-9);
    CHECK(j["data"]["constant"].get<double>() == doctest::Approx(2.0 / std::numbers::pi));
    CHECK(run({"constant", "one-free", "--config", temp_path("missing.ini")}).code == 2);
}
