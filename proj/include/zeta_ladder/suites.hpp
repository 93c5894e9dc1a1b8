#pragma once

// Verification suites and parameter sweeps over a shared pipeline.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "zeta_ladder/pipeline.hpp"
#include "zeta_ladder/report.hpp"

namespace zeta_ladder::suites {

struct RunConfig {
    std::vector<double> T{1e4};
    // 0 selects T^(1/2 + epsilon).
    double U = 0.0;
    std::vector<int> k{1};
    double epsilon = 0.05;
    int windows = 50;
    // Log-spaced heights over [T, 10 T] for the |omega| trend.
    int trend_points = 12;
    std::uint64_t sieve_limit = 2'000'000;
    double ladder_tolerance = 1e-12;
    std::filesystem::path cache_dir;
    unsigned jobs = 0;
    report::Format format = report::Format::csv;
    bool strict = false;

    /// Throws PreconditionError on empty lists or non-positive fields.
    void validate() const;
    double window(double T) const;
};

enum class Suite { lemma1, lemma2, theorem, spacing, conditions };
enum class Sweep { moments, tau, spacing };

Suite parse_suite(const std::string& name);
Sweep parse_sweep(const std::string& name);

/// Ladder height needed to run a suite or sweep under the config.
double required_height(Suite suite, const RunConfig& config);
double required_height(Sweep sweep, const RunConfig& config);

pipeline::Config pipeline_config(const RunConfig& config, double height);

struct Check {
    std::string name;
    double value = 0.0;
    std::string bound;
    // Hard checks decide the exit status; the rest are emitted as data.
    bool hard = true;
    bool passed = true;
};

struct SuiteResult {
    std::vector<Check> checks;
    bool passed() const;
};

SuiteResult verify(Suite suite, const RunConfig& config, const pipeline::Pipeline& pipe);

/// One line per check: `PASS|FAIL|DATA name value bound`.
void print_checks(const SuiteResult& result, std::ostream& out);

/// Rows ordered by (T, k), or by (T, window) for spacing.  Row failures are
/// recorded in a `status` column.
std::vector<report::Record> sweep(Sweep what, const RunConfig& config,
                                  const pipeline::Pipeline& pipe);

/// True when every row has status "ok".
bool all_ok(const std::vector<report::Record>& rows);

}  // namespace zeta_ladder::suites
