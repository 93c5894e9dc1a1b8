#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "zeta_ladder/cli.hpp"
#include "zeta_ladder/errors.hpp"
#include "zeta_ladder/pipeline.hpp"
#include "zeta_ladder/report.hpp"
#include "zeta_ladder/suites.hpp"

using namespace zeta_ladder;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

std::filesystem::path scratch() {
    static const auto dir = [] {
        auto d = std::filesystem::temp_directory_path() / "zeta-ladder-unit";
        std::filesystem::remove_all(d);
        std::filesystem::create_directories(d);
        return d;
    }();
    return dir;
}

Run run(std::vector<std::string> args) {
    const std::string cache = (scratch() / "cache").string();
    args.insert(args.begin(), "zeta-ladder");
    args.push_back("--cache-dir");
    args.push_back(cache);
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    Run r;
    r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

}  // namespace

TEST_CASE("record output") {
    CHECK(report::format_number(1e4) == "10000");
    CHECK(report::format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(report::format_number(std::nan("")) == "nan");
    CHECK(report::parse_format("json-lines") == report::Format::json_lines);
    CHECK_THROWS_AS(report::parse_format("xml"), PreconditionError);

    const std::vector<report::Record> rows = {
        {{"T", 1e4}, {"k", 1LL}, {"ok", true}, {"status", std::string("a,b")}},
        {{"T", 2.5}, {"k", 2LL}, {"ok", false}, {"status", std::string("ok")}},
    };
    std::ostringstream csv;
    report::write_records(csv, report::Format::csv, rows);
    CHECK(csv.str() == "T,k,ok,status\n10000,1,true,\"a,b\"\n2.5,2,false,ok\n");
    std::ostringstream json;
    const std::vector<report::Record> one = {{{"x", 1.0 / 3.0}, {"y", std::nan("")}}};
    report::write_records(json, report::Format::json_lines, one);
    CHECK(json.str() == "{\"x\":0.333333333333,\"y\":null}\n");
}

TEST_CASE("scan limit rounds up") {
    CHECK(pipeline::scan_limit(1e4) == doctest::Approx(1.1e4));
    CHECK(pipeline::scan_limit(1.0563e4) == doctest::Approx(1.1e4));
    CHECK(pipeline::scan_limit(5200.0) == doctest::Approx(5300.0));
    CHECK(pipeline::scan_limit(1e4) >= 1e4 + 10.0);
    CHECK_THROWS_AS(pipeline::scan_limit(5.0), PreconditionError);
}

TEST_CASE("run configuration") {
    suites::RunConfig c;
    CHECK_NOTHROW(c.validate());
    CHECK(c.window(1e4) == doctest::Approx(std::pow(1e4, 0.55)));
    c.U = 200.0;
    CHECK(c.window(1e4) == 200.0);
    c.T.clear();
    CHECK_THROWS_AS(c.validate(), PreconditionError);
    c.T = {1e4};
    c.k = {0};
    CHECK_THROWS_AS(c.validate(), PreconditionError);
    CHECK_THROWS_AS(suites::parse_suite("lemma3"), PreconditionError);
    CHECK(suites::parse_sweep("tau") == suites::Sweep::tau);

    suites::RunConfig s;
    s.T = {1e3};
    s.windows = 5;
    s.trend_points = 0;
    CHECK(suites::required_height(suites::Suite::spacing, s) >= 1e3 + 6 * s.window(1e3));
    s.trend_points = 12;
    CHECK(suites::required_height(suites::Suite::spacing, s) >= 1e4);
}

TEST_CASE("pipeline limits") {
    pipeline::Config c;
    c.height = 5e3;
    c.sieve_limit = 1000;
    CHECK_THROWS_AS(pipeline::Pipeline{c}, ConfigurationError);
}

TEST_CASE("zeros command") {
    const auto a = run({"zeros", "10", "100"});
    CHECK(a.code == cli::kOk);
    CHECK(lines(a.out).at(0) == "zeros in [10, 100]: 29");
    const auto b = run({"zeros", "10", "12"});
    CHECK(b.code == cli::kOk);
    CHECK(lines(b.out).at(0) == "zeros in [10, 12]: 0");
    CHECK(run({"zeros", "100", "10"}).code == cli::kUsage);
    CHECK(run({"zeros", "10"}).code == cli::kUsage);
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == cli::kUsage);
    CHECK(run({"frobnicate"}).code == cli::kUsage);
    CHECK(run({"verify", "lemma3"}).code == cli::kUsage);
    CHECK(run({"sweep", "tau", "--T", ""}).code == cli::kUsage);
    CHECK(run({"sweep", "tau", "--T", "1e4", "--format", "xml"}).code == cli::kUsage);
    CHECK(run({"sweep", "tau", "--T", "5e6"}).code == cli::kEnvironment);
    CHECK(run({"--help"}).code == cli::kOk);
}

TEST_CASE("verify lemma1") {
    const auto r = run({"verify", "lemma1", "--T", "5000", "--U", "200"});
    CHECK(r.code == cli::kOk);
    const auto out = lines(r.out);
    REQUIRE(out.size() == 5);
    for (int i = 0; i < 4; ++i) CHECK(out[i].rfind("PASS substitution", 0) == 0);
    CHECK(out[4] == "verify lemma1: passed (4/4 hard checks)");
}

TEST_CASE("verify theorem and conditions") {
    const auto r = run({"verify", "theorem", "--T", "10000", "--k", "1"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("PASS theorem ratio T=10000") != std::string::npos);
    const auto c = run({"verify", "conditions", "--T", "10000"});
    CHECK(c.code == cli::kOk);
    CHECK(c.out.find("DATA rho ratio") != std::string::npos);
}

TEST_CASE("config file with flag override") {
    const auto file = scratch() / "run.ini";
    std::ofstream(file) << "T = 5000\nU = 200\n";
    const auto a = run({"verify", "lemma1", "--config", file.string()});
    CHECK(a.code == cli::kOk);
    CHECK(a.out.find("T=5000 U=200") != std::string::npos);
    const auto b = run({"verify", "lemma1", "--config", file.string(), "--U", "100"});
    CHECK(b.out.find("T=5000 U=100") != std::string::npos);
}

TEST_CASE("sweeps") {
    const auto tau = run({"sweep", "tau", "--T", "3e3,2e3,5e3", "--k", "1"});
    CHECK(tau.code == cli::kOk);
    const auto rows = lines(tau.out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].rfind("T,U,k,tau,", 0) == 0);
    CHECK(rows[1].rfind("2000,", 0) == 0);
    CHECK(rows[2].rfind("3000,", 0) == 0);
    CHECK(rows[3].rfind("5000,", 0) == 0);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].substr(rows[i].size() - 3) == ",ok");

    const auto again = run({"sweep", "tau", "--T", "3e3,2e3,5e3", "--k", "1", "--jobs", "3"});
    CHECK(again.out == tau.out);

    const auto spacing = run({"sweep", "spacing", "--T", "3e3", "--windows", "6", "--format",
                              "json-lines"});
    CHECK(spacing.code == cli::kOk);
    const auto sp = lines(spacing.out);
    CHECK(sp.size() == 6);
    CHECK(sp[0].rfind("{\"T\":3000.0,\"window\":0,", 0) == 0);

    const auto m = run({"sweep", "moments", "--T", "3e3", "--k", "1,2"});
    CHECK(lines(m.out).size() == 3);

    // A window too short to bracket a crossing fails its row only.
    const auto tiny = run({"sweep", "tau", "--T", "3e3", "--U", "1e-9", "--k", "1"});
    CHECK(tiny.code == cli::kOk);
    CHECK(tiny.out.find("no admissible crossing") != std::string::npos);
    const auto strict = run({"sweep", "tau", "--T", "3e3", "--U", "1e-9", "--k", "1", "--strict"});
    CHECK(strict.code == cli::kAssertion);
}
