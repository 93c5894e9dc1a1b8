#pragma once

// Shared, lazily built zero caches for the unit tests.

#include <memory>

#include "zeta_ladder/ladder.hpp"
#include "zeta_ladder/zero_scan.hpp"

namespace fixtures {

inline std::shared_ptr<const zeta_ladder::ZeroCache> zeros_to(double hi) {
    return std::make_shared<const zeta_ladder::ZeroCache>(zeta_ladder::scan_zeros(10.0, hi));
}

// Zeros on [10, 1.2e4].
inline std::shared_ptr<const zeta_ladder::ZeroCache> low_cache() {
    static const auto cache = zeros_to(1.2e4);
    return cache;
}

inline const zeta_ladder::ladder::PrimePi& sieve() {
    static const zeta_ladder::ladder::PrimePi pi(2'000'000);
    return pi;
}

// phi_1 on [10, 1.2e4].
inline const zeta_ladder::ladder::LadderTable& low_ladder() {
    static const auto table = zeta_ladder::ladder::build_ladder(10.0, 1.2e4, 1e-12, sieve());
    return table;
}

}  // namespace fixtures
