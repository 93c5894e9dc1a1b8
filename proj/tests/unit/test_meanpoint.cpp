#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "zeta_ladder/errors.hpp"
#include "zeta_ladder/meanpoint.hpp"
#include "zeta_ladder/moments.hpp"
#include "zeta_ladder/rs_core.hpp"

using namespace zeta_ladder;
using namespace zeta_ladder::meanpoint;

namespace {

const argument::ArgumentFunction& low_arg() {
    static const argument::ArgumentFunction arg(fixtures::low_cache());
    return arg;
}

const TauPoint& tau_1e4(int k) {
    static const TauPoint one =
        find_tau(1e4, default_window(1e4), 1, fixtures::low_ladder(), low_arg());
    static const TauPoint two =
        find_tau(1e4, default_window(1e4), 2, fixtures::low_ladder(), low_arg());
    return k == 1 ? one : two;
}

SpacingReport synthetic(double gamma, double omega) {
    SpacingReport r;
    r.gamma = gamma;
    r.omega = omega;
    return r;
}

}  // namespace

TEST_CASE("default window") {
    CHECK(default_window(1e4) == doctest::Approx(std::pow(1e4, 0.55)));
    CHECK(default_window(1e4, 0.1) == doctest::Approx(std::pow(1e4, 0.6)));
    CHECK_THROWS_AS(default_window(1e4, 0.0), PreconditionError);
}

TEST_CASE("mean-value point") {
    const auto& table = fixtures::low_ladder();
    const auto& arg = low_arg();
    for (int k : {1, 2}) {
        CAPTURE(k);
        const auto& tp = tau_1e4(k);
        CHECK(tp.tau > tp.T);
        CHECK(tp.tau < tp.T + tp.U);
        CHECK(tp.phi1_tau > table.phi(tp.T));
        CHECK(tp.phi1_tau < table.phi(tp.T + tp.U));
        CHECK(tp.residual() <= 1e-9);
        CHECK(arg.cache().distance_to_zero(tp.tau) > 1e-6);

        // Window average through the image window instead of the ladder weight.
        const double image = moments::plain_integral(table.phi(tp.T), table.phi(tp.T + tp.U), k,
                                                     true, arg);
        CHECK(std::abs(image / tp.U - tp.window_average) <= 1e-6 * tp.window_average);
        CHECK(std::abs(integrand(table, arg, k, tp.tau) - tp.window_average) <=
              1e-9 * tp.window_average);

        // No earlier crossing on a fine grid.
        const double sign = integrand(table, arg, k, tp.T + 1e-9) - tp.window_average;
        for (double t = tp.T + 1e-3; t < tp.tau - 1e-6; t += 2e-3) {
            CHECK((integrand(table, arg, k, t) - tp.window_average < 0.0) == (sign < 0.0));
        }
    }
    const auto again = find_tau(1e4, default_window(1e4), 1, table, arg);
    CHECK(again.tau == tau_1e4(1).tau);
    CHECK_THROWS_AS(find_tau(1.19e4, 500.0, 1, table, arg), CoverageError);
}

TEST_CASE("theorem ratio with the same-window constant") {
    const auto& table = fixtures::low_ladder();
    const auto& arg = low_arg();
    for (int k : {1, 2}) {
        CAPTURE(k);
        const auto& tp = tau_1e4(k);
        const double ck = moments::empirical_c_k(table, tp.T, tp.U, k, arg);
        const auto th = check_theorem(tp, ck, arg);
        const double s1 = arg.s1(tp.phi1_tau);
        const double z = rs::z(tp.tau);
        const double algebra =
            std::pow(std::pow(s1 * s1, k) * z * z / (ck * std::log(tp.tau)), 1.0 / (2 * k));
        CHECK(th.ratio == doctest::Approx(algebra).epsilon(1e-12));
        CHECK(th.ratio >= 0.95);
        CHECK(th.ratio <= 1.05);
    }
    CHECK_THROWS_AS(check_theorem(tau_1e4(1), 0.0, arg), PreconditionError);
    TauPoint bad = tau_1e4(1);
    bad.tau = arg.cache().records()[5000].gamma;
    CHECK_THROWS_AS(check_theorem(bad, 0.7, arg), ExceptionalPointError);
}

TEST_CASE("window conditions") {
    const auto& tp = tau_1e4(1);
    const auto bc = check_conditions_BC(tp, fixtures::low_ladder(), fixtures::sieve());
    CHECK(bc.image_below_T);
    CHECK(bc.rho > 0.0);
    CHECK(bc.rho == doctest::Approx(tp.T - fixtures::low_ladder().phi(tp.T + tp.U)));
    CHECK(bc.tan_alpha_deviation == doctest::Approx(bc.tan_alpha - 1.0));
    CHECK(bc.rho_ratio > 0.5);
    CHECK(bc.rho_ratio < 1.5);
}

TEST_CASE("mean of the argument at tau") {
    const auto& arg = low_arg();
    const auto& tp = tau_1e4(1);
    const double ck = moments::empirical_c_k(fixtures::low_ladder(), tp.T, tp.U, 1, arg);
    const auto om = corollary_omega(tp, ck, arg);
    const auto th = check_theorem(tp, ck, arg);
    CHECK(om.lhs * tp.phi1_tau == doctest::Approx(th.lhs).epsilon(1e-12));
    CHECK(om.ratio == doctest::Approx(th.ratio * tp.tau / tp.phi1_tau).epsilon(1e-12));
}

TEST_CASE("spacing report") {
    const auto& arg = low_arg();
    const auto& tp = tau_1e4(1);
    const double c1 = moments::empirical_c_k(fixtures::low_ladder(), tp.T, tp.U, 1, arg);
    const auto r = spacing_report(tp, c1, arg);
    CHECK(r.ordered());
    CHECK(r.residual_left <= 1e-9);
    CHECK(r.residual_right <= 1e-9);
    CHECK(r.actual_gap == doctest::Approx(r.gamma_prime - r.gamma));
    CHECK(r.actual_gap > 0.0);
    const double q = r.predicted_gap / r.actual_gap;
    CHECK(q >= 0.5);
    CHECK(q <= 2.0);
    CHECK_THROWS_AS(spacing_report(tau_1e4(2), c1, arg), PreconditionError);
}

TEST_CASE("gap formula terms") {
    const double pi = std::numbers::pi;
    const double one = gap_term(1, 1e4, 0.5, 1e-4, 2.0);
    CHECK(one == doctest::Approx(pi * std::sqrt(0.5) * std::sqrt(std::log(1e4)) / (1e4 * 1e-4 * 2.0)));
    const double two = gap_term(2, 1e4, 0.5, -1e-4, 2.0);
    CHECK(two == doctest::Approx(std::sqrt(pi * std::sqrt(0.5) * 2.0 * std::sqrt(std::log(1e4)) /
                                           (1e4 * 1e-4 * 2.0))));
    CHECK_THROWS_AS(gap_term(0, 1e4, 0.5, 1e-4, 2.0), PreconditionError);
}

TEST_CASE("lower bound trend") {
    std::vector<SpacingReport> reports;
    for (int i = 0; i < 12; ++i) {
        const double g = 1e4 * std::pow(10.0, i / 11.0);
        reports.push_back(synthetic(g, 3.0 / g));
    }
    const auto fit = lower_bound_trend(reports);
    CHECK(fit.slope == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(fit.slope >= kLowerBoundExponent);
    CHECK(fit.rms_residual <= 1e-12);
    CHECK(fit.points == 12);
    reports.pop_back();
    reports.pop_back();
    reports.pop_back();
    CHECK_THROWS_AS(lower_bound_trend(reports), InsufficientDataError);
    std::vector<SpacingReport> narrow;
    for (int i = 0; i < 12; ++i) narrow.push_back(synthetic(1e4 + i, 1e-4));
    CHECK_THROWS_AS(lower_bound_trend(narrow), InsufficientDataError);
}
