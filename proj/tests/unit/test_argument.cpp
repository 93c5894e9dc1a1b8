#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "oracle/zeta_oracle.hpp"
#include "zeta_ladder/argument.hpp"
#include "zeta_ladder/errors.hpp"
#include "zeta_ladder/rs_core.hpp"

using namespace zeta_ladder;
using namespace zeta_ladder::argument;

namespace {

constexpr double kPi = std::numbers::pi;

// Composite Simpson rule on the quad-precision theta.
double oracle_theta_integral(double T, int intervals) {
    using zeta_oracle::quad;
    const quad h = static_cast<quad>(T) / intervals;
    quad sum = 0;
    for (int i = 0; i <= intervals; ++i) {
        const quad x = h * i;
        const quad f = i == 0 ? quad(0) : zeta_oracle::theta(x);
        const int w = (i == 0 || i == intervals) ? 1 : (i % 2 == 1 ? 4 : 2);
        sum += w * f;
    }
    return static_cast<double>(sum * h / 3);
}

}  // namespace

TEST_CASE("S below the first zero and just above it") {
    const auto cache = fixtures::low_cache();
    const auto s10 = s_of_t(10.0, *cache);
    CHECK(s10.s == doctest::Approx(-1.0 - rs::theta(10.0) / kPi).epsilon(1e-15));
    CHECK(s10.branch_source == BranchSource::counting_identity);
    CHECK(s_of_t(15.0, *cache).s == doctest::Approx(-rs::theta(15.0) / kPi).epsilon(1e-15));
    const double g1 = cache->records()[0].gamma;
    const double jump = s_of_t(g1, *cache).s - s_of_t(g1 - 1e-9, *cache).s;
    CHECK(jump == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("path tracking agrees with the counting identity") {
    const auto cache = fixtures::low_cache();
    CHECK(std::abs(s_path_oracle(15.0).s - s_of_t(15.0, *cache).s) <= 1e-6);
    CHECK(std::abs(s_path_oracle(50.0).s - s_of_t(50.0, *cache).s) <= 1e-6);
    CHECK(s_path_oracle(50.0).branch_source == BranchSource::path_tracking);

    const auto z = zeta_oracle::zeta({zeta_oracle::quad(0.5), zeta_oracle::quad(0.5)});
    const double principal = std::atan2(static_cast<double>(z.im), static_cast<double>(z.re));
    CHECK(arg_zeta_path(0.5) == doctest::Approx(principal).epsilon(1e-10));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(1.0, 1e4);
    int checked = 0;
    while (checked < 50) {
        const double t = u(rng);
        if (cache->distance_to_zero(t) < 1e-3) continue;
        CHECK(std::abs(s_path_oracle(t).s - s_of_t(t, *cache).s) <= 1e-6);
        ++checked;
    }
}

TEST_CASE("path tracking rejects invalid heights") {
    CHECK_THROWS_AS(arg_zeta_path(0.0), DomainError);
    CHECK_THROWS_AS(arg_zeta_path(-2.0), DomainError);
}

TEST_CASE("integral of theta") {
    CHECK(theta_integral(0.0L) == 0.0L);
    CHECK(std::abs(static_cast<double>(theta_integral(7.0L)) - oracle_theta_integral(7.0, 4000)) <=
          1e-9);
    CHECK(std::abs(static_cast<double>(theta_integral(50.0L)) - oracle_theta_integral(50.0, 20000)) <=
          1e-9);
    const double below = static_cast<double>(theta_integral(std::nextafter(10.0L, 0.0L)));
    CHECK(std::abs(below - static_cast<double>(theta_integral(10.0L))) <= 1e-9);
    CHECK_THROWS_AS(theta_integral(-1.0L), DomainError);
}

TEST_CASE("S1 closed form and direct quadrature") {
    const auto cache = fixtures::low_cache();
    CHECK(s1_of_T(0.0, *cache).value == 0.0);
    const double s1_10 = s1_of_T(10.0, *cache).value;
    CHECK(s1_10 == doctest::Approx(-10.0 - static_cast<double>(theta_integral(10.0L)) / kPi)
                       .epsilon(1e-14));
    const auto closed = s1_of_T(100.0, *cache, S1Method::closed_form);
    const auto direct = s1_of_T(100.0, *cache, S1Method::direct_quadrature);
    CHECK(closed.method == S1Method::closed_form);
    CHECK(direct.method == S1Method::direct_quadrature);
    CHECK(std::abs(closed.value - direct.value) <= 1e-6 * std::max(1.0, std::abs(closed.value)));
    for (int i = 1; i <= 20; ++i) {
        const double T = 500.0 * i - 3.7;
        const double a = s1_of_T(T, *cache).value;
        const double b = s1_of_T(T, *cache, S1Method::direct_quadrature).value;
        CHECK(std::abs(a - b) <= 1e-6 * std::max(1.0, std::abs(a)));
    }
    CHECK_THROWS_AS(s1_of_T(1.3e4, *cache), CoverageError);
    CHECK_THROWS_AS(s1_of_T(-1.0, *cache), DomainError);
}

TEST_CASE("ArgumentFunction matches the closed form and is continuous") {
    const ArgumentFunction arg(fixtures::low_cache());
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.2e4);
    for (int i = 0; i < 200; ++i) {
        const double t = u(rng);
        CHECK(std::abs(arg.s1(t) - arg.s1_closed_form(t)) <= 1e-8);
    }
    for (std::size_t i : {0u, 1u, 500u, 5000u}) {
        const double g = arg.cache().records()[i].gamma;
        CHECK(std::abs(arg.s1(g + 1e-7) - arg.s1(g - 1e-7)) <= 1e-6);
    }
    CHECK(arg.s1(0.0) == 0.0);
    CHECK_THROWS_AS(arg.s1(2e4), CoverageError);
    const auto high = std::make_shared<const ZeroCache>(scan_zeros(100.0, 200.0));
    CHECK_THROWS_AS(ArgumentFunction{high}, CoverageError);
}

TEST_CASE("S decreases between zeros") {
    const auto cache = fixtures::low_cache();
    const auto& recs = cache->records();
    for (std::size_t i : {10u, 100u, 1000u}) {
        const double a = recs[i].gamma;
        const double b = recs[i + 1].gamma;
        double prev = s_of_t(a, *cache).s;
        for (int j = 1; j < 10; ++j) {
            const double s = s_of_t(a + (b - a) * j / 10.0, *cache).s;
            CHECK(s < prev);
            prev = s;
        }
    }
}

TEST_CASE("mean value of the argument") {
    const auto cache = fixtures::low_cache();
    CHECK(mean_omega(10.0, *cache) == doctest::Approx(kPi * s1_of_T(10.0, *cache).value / 10.0));
    CHECK_THROWS_AS(mean_omega(0.0, *cache), DomainError);
    for (double L : {37.0, 812.5, 5000.0}) {
        const double lhs = mean_omega(2 * L, *cache) * 2 * L - mean_omega(L, *cache) * L;
        const double rhs = kPi * (s1_of_T(2 * L, *cache).value - s1_of_T(L, *cache).value);
        CHECK(std::abs(lhs - rhs) <= 1e-9);
    }
    const ArgumentFunction arg(cache);
    CHECK(arg.mean_omega(5000.0) == doctest::Approx(mean_omega(5000.0, *cache)).epsilon(1e-8));
}
