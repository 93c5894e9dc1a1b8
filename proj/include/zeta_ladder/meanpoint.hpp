#pragma once

// Mean-value point tau_k(T), the |zeta| / arg zeta relation it certifies,
// the window conditions, and the zero-spacing formulas built on tau_1.

#include <vector>

#include "zeta_ladder/argument.hpp"
#include "zeta_ladder/ladder.hpp"

namespace zeta_ladder::meanpoint {

constexpr double kDefaultEpsilon = 0.05;
constexpr double kResidualTolerance = 1e-9;
// Exponent of the |omega| lower bound.
constexpr double kLowerBoundExponent = -4.0 / 3.0;

/// U = T^(1/2 + epsilon).
double default_window(double T, double epsilon = kDefaultEpsilon);

struct TauPoint {
    double T = 0.0;
    double U = 0.0;
    int k = 1;
    double tau = 0.0;
    double phi1_tau = 0.0;
    double integrand_at_tau = 0.0;
    double window_average = 0.0;

    /// |g(tau) - M| / M.
    double residual() const;
};

/// g(t) = S1(phi_1(t))^(2k) Z~^2(t).
double integrand(const ladder::LadderTable& table, const argument::ArgumentFunction& arg, int k,
                 double t);

/// Smallest t in (T, T+U) with g(t) equal to its window average, skipping
/// zero ordinates.  Throws ScanResolutionError when no crossing is found.
TauPoint find_tau(double T, double U, int k, const ladder::LadderTable& table,
                  const argument::ArgumentFunction& arg);

struct TheoremCheck {
    double lhs = 0.0;  // pi |S1(phi_1(tau))|
    double rhs = 0.0;  // pi c_k^(1/2k) (ln tau)^(1/2k) / |zeta(1/2 + i tau)|^(1/k)
    double ratio = 0.0;
};

TheoremCheck check_theorem(const TauPoint& tp, double c_k, const argument::ArgumentFunction& arg);

struct ConditionsReport {
    double tan_alpha = 0.0;
    double tan_alpha_deviation = 0.0;  // tan alpha - 1
    bool image_below_T = false;        // phi_1(T+U) < T
    double rho = 0.0;                  // T - phi_1(T+U)
    double rho_ratio = 0.0;            // rho / ((1 - c) pi(T))
};

ConditionsReport check_conditions_BC(const TauPoint& tp, const ladder::LadderTable& table,
                                     const ladder::PrimePi& pi);

struct OmegaCheck {
    double lhs = 0.0;  // |mean of arg zeta over [0, phi_1(tau)]|
    double rhs = 0.0;  // theorem rhs / tau
    double ratio = 0.0;
};

OmegaCheck corollary_omega(const TauPoint& tp, double c_k, const argument::ArgumentFunction& arg);

struct SpacingReport {
    double gamma = 0.0;
    double gamma_prime = 0.0;
    double tau1 = 0.0;
    double xi_left = 0.0;
    double xi_right = 0.0;
    double z_tau = 0.0;            // |Z(tau1)|
    double z_prime_left = 0.0;     // |Z'(xi_left)|
    double z_prime_right = 0.0;    // |Z'(xi_right)|
    double residual_left = 0.0;    // | |Z(tau1)| - |Z'(xi_left)| (tau1 - gamma) |
    double residual_right = 0.0;   // | |Z(tau1)| - |Z'(xi_right)| (gamma' - tau1) |
    double omega = 0.0;
    double c1 = 0.0;
    double predicted_gap = 0.0;
    double actual_gap = 0.0;

    bool ordered() const;
};

/// One term of the gap formula for a zero of order n:
/// (pi sqrt(c1) n! sqrt(ln gamma) / (gamma |omega| |Z^(n)|))^(1/n).
double gap_term(int order, double gamma, double c1, double omega, double z_derivative_abs);

/// Requires k = 1 and simple bracketing zeros (UnsupportedOrderError otherwise).
SpacingReport spacing_report(const TauPoint& tp, double c1, const argument::ArgumentFunction& arg);

struct TrendFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms_residual = 0.0;
    std::size_t points = 0;
};

/// Least-squares slope of ln|omega| against ln gamma.  Needs at least 10
/// reports spanning about a decade, 0.95 in log10 (InsufficientDataError).
TrendFit lower_bound_trend(const std::vector<SpacingReport>& reports);

}  // namespace zeta_ladder::meanpoint
