#include "zeta_ladder/meanpoint.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "zeta_ladder/errors.hpp"
#include "zeta_ladder/moments.hpp"
#include "zeta_ladder/numeric.hpp"
#include "zeta_ladder/rs_core.hpp"
#include "zeta_ladder/zero_scan.hpp"

namespace zeta_ladder::meanpoint {

namespace {

constexpr double kPi = std::numbers::pi;
// Grid points per mean zero gap when looking for crossings.
constexpr int kPointsPerGap = 40;
// Sampling T..10T puts the first and last zero ordinate slightly inside the decade.
constexpr double kMinimumDecades = 0.95;

double mean_gap(double t) {
    return 2.0 * kPi / std::log(std::max(t, 16.0 * kPi) / (2.0 * kPi));
}

bool near_zero(const ZeroCache& cache, double t) {
    return cache.distance_to_zero(t) <= 1e-9 * std::max(1.0, t);
}

// Interior point of (lo, hi) where |Z'| equals target; first crossing on a
// grid that is refined until one shows up.
double solve_mean_value_point(double lo, double hi, double target) {
    const auto h = [&](double x) { return std::abs(rs::z_derivative(x).value) - target; };
    for (int n = 64; n <= 4096; n *= 4) {
        double x0 = lo + (hi - lo) / (n + 1);
        double h0 = h(x0);
        for (int j = 2; j <= n; ++j) {
            const double x1 = lo + (hi - lo) * j / (n + 1);
            const double h1 = h(x1);
            if (h0 == 0.0) return x0;
            if ((h0 < 0.0) != (h1 < 0.0)) {
                return numeric::refine_root(h, x0, x1, h0, h1, 1e-12 * std::max(1.0, target)).x;
            }
            x0 = x1;
            h0 = h1;
        }
    }
    throw ScanResolutionError("spacing_report: no mean-value point found in the bracket");
}

}  // namespace

double default_window(double T, double epsilon) {
    if (!std::isfinite(T) || T <= 1.0) throw PreconditionError("default_window: T must exceed 1");
    if (!(epsilon > 0.0 && epsilon < 0.5)) {
        throw PreconditionError("default_window: epsilon must lie in (0, 1/2)");
    }
    return std::pow(T, 0.5 + epsilon);
}

double TauPoint::residual() const {
    return std::abs(integrand_at_tau - window_average) / window_average;
}

double integrand(const ladder::LadderTable& table, const argument::ArgumentFunction& arg, int k,
                 double t) {
    const double s1 = arg.s1(table.phi(t));
    return std::pow(s1 * s1, k) * ladder::z_tilde_sq(t, table.normalization());
}

TauPoint find_tau(double T, double U, int k, const ladder::LadderTable& table,
                  const argument::ArgumentFunction& arg) {
    const auto m = moments::transformed_moment(table, T, U, k, arg,
                                               moments::MomentKind::transformed_s1,
                                               moments::Weight::z_tilde_sq);
    const double M = m.raw_integral / U;
    if (!(M > 0.0)) throw ScanResolutionError("find_tau: window average is not positive");

    const auto d = [&](double t) { return integrand(table, arg, k, t) - M; };
    const double step = mean_gap(T) / kPointsPerGap;
    const auto n = static_cast<long>(std::ceil(U / step));
    double t0 = T;
    double d0 = d(t0);
    for (long i = 1; i <= n; ++i) {
        const double t1 = i == n ? T + U : T + U * static_cast<double>(i) / static_cast<double>(n);
        const double d1 = d(t1);
        if ((d0 < 0.0) != (d1 < 0.0)) {
            const auto root = numeric::refine_root(d, t0, t1, d0, d1, 0.1 * kResidualTolerance * M);
            const double tau = root.x;
            TauPoint tp{T, U, k, tau, table.phi(tau), root.fx + M, M};
            const bool interior = tau > T && tau < T + U;
            if (interior && !near_zero(arg.cache(), tau) && tp.residual() <= kResidualTolerance) {
                return tp;
            }
        }
        t0 = t1;
        d0 = d1;
    }
    throw ScanResolutionError("find_tau: no admissible crossing of the window average in (" +
                              std::to_string(T) + ", " + std::to_string(T + U) + ")");
}

TheoremCheck check_theorem(const TauPoint& tp, double c_k, const argument::ArgumentFunction& arg) {
    if (!(c_k > 0.0)) throw PreconditionError("check_theorem: c_k must be positive");
    const double z = std::abs(rs::z(tp.tau));
    if (near_zero(arg.cache(), tp.tau) || z <= 1e-12) {
        throw ExceptionalPointError("check_theorem: tau is too close to a zero ordinate", tp.tau);
    }
    const double inv = 1.0 / (2.0 * tp.k);
    TheoremCheck out;
    out.lhs = kPi * std::abs(arg.s1(tp.phi1_tau));
    out.rhs = kPi * std::pow(c_k, inv) * std::pow(std::log(tp.tau), inv) / std::pow(z, 1.0 / tp.k);
    out.ratio = out.lhs / out.rhs;
    return out;
}

ConditionsReport check_conditions_BC(const TauPoint& tp, const ladder::LadderTable& table,
                                     const ladder::PrimePi& pi) {
    ConditionsReport out;
    out.tan_alpha = ladder::tan_alpha(table, tp.T, tp.U).value;
    out.tan_alpha_deviation = out.tan_alpha - 1.0;
    const double image_end = table.phi(tp.T + tp.U);
    out.image_below_T = image_end < tp.T;
    out.rho = tp.T - image_end;
    const double scale = (1.0 - std::numbers::egamma) * static_cast<double>(pi(tp.T));
    out.rho_ratio = out.rho / scale;
    return out;
}

OmegaCheck corollary_omega(const TauPoint& tp, double c_k, const argument::ArgumentFunction& arg) {
    const auto th = check_theorem(tp, c_k, arg);
    OmegaCheck out;
    out.lhs = std::abs(arg.mean_omega(tp.phi1_tau));
    out.rhs = th.rhs / tp.tau;
    out.ratio = out.lhs / out.rhs;
    return out;
}

bool SpacingReport::ordered() const {
    return gamma < xi_left && xi_left < tau1 && tau1 < xi_right && xi_right < gamma_prime;
}

double gap_term(int order, double gamma, double c1, double omega, double z_derivative_abs) {
    if (order < 1) throw PreconditionError("gap_term: order must be >= 1");
    double factorial = 1.0;
    for (int j = 2; j <= order; ++j) factorial *= j;
    const double base = kPi * std::sqrt(c1) * factorial * std::sqrt(std::log(gamma)) /
                        (gamma * std::abs(omega) * z_derivative_abs);
    return std::pow(base, 1.0 / order);
}

SpacingReport spacing_report(const TauPoint& tp, double c1, const argument::ArgumentFunction& arg) {
    if (tp.k != 1) throw PreconditionError("spacing_report: requires k = 1");
    const auto [g, gp] = bracket(tp.tau, arg.cache());
    if (g.order != 1 || gp.order != 1) {
        throw UnsupportedOrderError("spacing_report: bracketing zeros are not simple");
    }
    SpacingReport r;
    r.gamma = g.gamma;
    r.gamma_prime = gp.gamma;
    r.tau1 = tp.tau;
    r.z_tau = std::abs(rs::z(tp.tau));
    r.xi_left = solve_mean_value_point(g.gamma, tp.tau, r.z_tau / (tp.tau - g.gamma));
    r.xi_right = solve_mean_value_point(tp.tau, gp.gamma, r.z_tau / (gp.gamma - tp.tau));
    r.z_prime_left = std::abs(rs::z_derivative(r.xi_left).value);
    r.z_prime_right = std::abs(rs::z_derivative(r.xi_right).value);
    r.residual_left = std::abs(r.z_tau - r.z_prime_left * (tp.tau - g.gamma));
    r.residual_right = std::abs(r.z_tau - r.z_prime_right * (gp.gamma - tp.tau));
    r.omega = arg.mean_omega(tp.phi1_tau);
    r.c1 = c1;
    r.predicted_gap = gap_term(1, g.gamma, c1, r.omega, r.z_prime_left) +
                      gap_term(1, g.gamma, c1, r.omega, r.z_prime_right);
    r.actual_gap = gp.gamma - g.gamma;
    return r;
}

TrendFit lower_bound_trend(const std::vector<SpacingReport>& reports) {
    if (reports.size() < 10) {
        throw InsufficientDataError("lower_bound_trend: need at least 10 reports");
    }
    double lo = reports.front().gamma;
    double hi = lo;
    for (const auto& r : reports) {
        lo = std::min(lo, r.gamma);
        hi = std::max(hi, r.gamma);
    }
    if (std::log10(hi / lo) < kMinimumDecades) {
        throw InsufficientDataError("lower_bound_trend: reports span less than a decade");
    }
    const auto n = static_cast<double>(reports.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& r : reports) {
        const double x = std::log(r.gamma);
        const double y = std::log(std::abs(r.omega));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    TrendFit fit;
    fit.points = reports.size();
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0.0;
    for (const auto& r : reports) {
        const double e = std::log(std::abs(r.omega)) - (fit.intercept + fit.slope * std::log(r.gamma));
        ss += e * e;
    }
    fit.rms_residual = std::sqrt(ss / n);
    return fit;
}

}  // namespace zeta_ladder::meanpoint
