#include "zeta_ladder/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "zeta_ladder/errors.hpp"
#include "zeta_ladder/pipeline.hpp"
#include "zeta_ladder/report.hpp"
#include "zeta_ladder/suites.hpp"
#include "zeta_ladder/zero_scan.hpp"

namespace zeta_ladder::cli {

namespace {

constexpr const char* kDefaultCacheDir = ".zeta-ladder-cache";

int cmd_zeros(double a, double b, const std::filesystem::path& dir, unsigned jobs,
              std::ostream& out) {
    if (!(a >= 10.0 && a < b)) throw PreconditionError("zeros: require 10 <= A < B");
    ScanOptions options;
    options.jobs = jobs;
    const auto cache = load_or_scan(a, b, options, dir);
    out << "zeros in [" << report::format_number(a) << ", " << report::format_number(b)
        << "]: " << cache.size() << '\n';
    out << "audit: passed (N(" << report::format_number(b) << ") = " << cache.counting(b) << ")\n";
    out << "cache: " << (dir / cache_file_name(a, b, options)).string() << '\n';
    return kOk;
}

int cmd_verify(const std::string& name, const suites::RunConfig& config, std::ostream& out) {
    const auto suite = suites::parse_suite(name);
    config.validate();
    const pipeline::Pipeline pipe(
        suites::pipeline_config(config, suites::required_height(suite, config)));
    const auto result = suites::verify(suite, config, pipe);
    suites::print_checks(result, out);
    std::size_t hard = 0, failed = 0;
    for (const auto& c : result.checks) {
        if (!c.hard) continue;
        ++hard;
        if (!c.passed) ++failed;
    }
    out << "verify " << name << ": " << (failed == 0 ? "passed" : "FAILED") << " ("
        << hard - failed << '/' << hard << " hard checks)\n";
    return failed == 0 ? kOk : kAssertion;
}

int cmd_sweep(const std::string& name, const suites::RunConfig& config, std::ostream& out) {
    const auto what = suites::parse_sweep(name);
    config.validate();
    const pipeline::Pipeline pipe(
        suites::pipeline_config(config, suites::required_height(what, config)));
    const auto rows = suites::sweep(what, config, pipe);
    report::write_records(out, config.format, rows);
    return config.strict && !suites::all_ok(rows) ? kAssertion : kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical experiments on Z(t), its zeros, and the ladder phi_1.",
                 "zeta-ladder"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key = value file; flags override it");

    suites::RunConfig config;
    std::string cache_dir = kDefaultCacheDir;
    std::string format = "csv";
    app.add_option("--T", config.T, "heights, comma separated")->delimiter(',');
    app.add_option("--U", config.U, "window length (default T^(1/2 + epsilon))");
    app.add_option("--k", config.k, "moment orders, comma separated")->delimiter(',');
    app.add_option("--epsilon", config.epsilon);
    app.add_option("--windows", config.windows, "spacing windows per height");
    app.add_option("--trend-points", config.trend_points, "heights in the omega trend fit");
    app.add_option("--sieve-limit", config.sieve_limit);
    app.add_option("--tolerance", config.ladder_tolerance, "ladder panel tolerance");
    app.add_option("--cache-dir", cache_dir)->envname("ZETA_LADDER_CACHE");
    app.add_option("--format", format, "csv or json-lines");
    app.add_option("--jobs", config.jobs, "worker threads (0 = all cores)");
    app.add_flag("--strict", config.strict, "exit 4 when any sweep row fails");

    double a = 0.0, b = 0.0;
    auto* zeros = app.add_subcommand("zeros", "scan and cache the zeros in [A, B]")->fallthrough();
    zeros->add_option("A", a)->required();
    zeros->add_option("B", b)->required();

    std::string suite;
    auto* verify = app.add_subcommand("verify", "run a verification suite")->fallthrough();
    verify->add_option("suite", suite, "lemma1, lemma2, theorem, spacing or conditions")->required();

    std::string what;
    auto* sweep = app.add_subcommand("sweep", "tabulate over heights and orders")->fallthrough();
    sweep->add_option("what", what, "moments, tau or spacing")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        config.cache_dir = cache_dir;
        config.format = report::parse_format(format);
        if (zeros->parsed()) return cmd_zeros(a, b, config.cache_dir, config.jobs, out);
        if (verify->parsed()) return cmd_verify(suite, config, out);
        return cmd_sweep(what, config, out);
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ConfigurationError& e) {
        err << "error: " << e.what() << '\n';
        return kEnvironment;
    } catch (const CoverageError& e) {
        err << "error: " << e.what() << '\n';
        return kEnvironment;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kEnvironment;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kAssertion;
    }
}

}  // namespace zeta_ladder::cli
