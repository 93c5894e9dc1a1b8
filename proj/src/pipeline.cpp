#include "zeta_ladder/pipeline.hpp"

#include <cmath>
#include <string>

#include "zeta_ladder/errors.hpp"

namespace zeta_ladder::pipeline {

namespace {

constexpr double kStart = 10.0;
// Zeros past the ladder end keep bracket() and distance_to_zero() valid there.
constexpr double kMargin = 10.0;

}  // namespace

double scan_limit(double height) {
    if (!std::isfinite(height) || height <= kStart) {
        throw PreconditionError("scan_limit: height must exceed " + std::to_string(kStart));
    }
    const double x = height + kMargin;
    const double unit = std::pow(10.0, std::floor(std::log10(x)) - 1.0);
    return std::ceil(x / unit) * unit;
}

Pipeline::Pipeline(const Config& config) : config_(config) {
    if (static_cast<double>(config.sieve_limit) < config.height) {
        throw ConfigurationError("sieve limit " + std::to_string(config.sieve_limit) +
                                 " is below the requested height " + std::to_string(config.height));
    }
    ScanOptions scan;
    scan.jobs = config.jobs;
    zeros_ = std::make_shared<const ZeroCache>(
        load_or_scan(kStart, scan_limit(config.height), scan, config.cache_dir));
    arg_ = std::make_unique<argument::ArgumentFunction>(zeros_);
    pi_ = std::make_unique<ladder::PrimePi>(config.sieve_limit);
    ladder::LadderOptions options;
    options.normalization = config.normalization;
    ladder_ = std::make_unique<ladder::LadderTable>(
        ladder::build_ladder(kStart, config.height, config.ladder_tolerance, *pi_, options));
}

}  // namespace zeta_ladder::pipeline
