#pragma once

// Zeros, argument tables, prime counts and the ladder, built once for a
// height range and shared read-only by the experiments.

#include <cstdint>
#include <filesystem>
#include <memory>

#include "zeta_ladder/argument.hpp"
#include "zeta_ladder/ladder.hpp"
#include "zeta_ladder/zero_scan.hpp"

namespace zeta_ladder::pipeline {

struct Config {
    // The ladder must reach this height.
    double height = 1e4;
    std::uint64_t sieve_limit = 2'000'000;
    // Empty: scan without a disk cache.
    std::filesystem::path cache_dir;
    unsigned jobs = 0;
    ladder::Normalization normalization = ladder::Normalization::mean_square_calibrated;
    double ladder_tolerance = 1e-12;
};

/// Upper end of the zero scan for a given height: a small margin, rounded up
/// to two significant digits so nearby heights share one cache file.
double scan_limit(double height);

class Pipeline {
public:
    explicit Pipeline(const Config& config);

    const Config& config() const noexcept { return config_; }
    const ZeroCache& zeros() const noexcept { return *zeros_; }
    const argument::ArgumentFunction& arg() const noexcept { return *arg_; }
    const ladder::PrimePi& pi() const noexcept { return *pi_; }
    const ladder::LadderTable& ladder() const noexcept { return *ladder_; }

private:
    Config config_;
    std::shared_ptr<const ZeroCache> zeros_;
    std::unique_ptr<argument::ArgumentFunction> arg_;
    std::unique_ptr<ladder::PrimePi> pi_;
    std::unique_ptr<ladder::LadderTable> ladder_;
};

}  // namespace zeta_ladder::pipeline
