#pragma once

// Riemann-Siegel evaluation of the critical-line signal
//
//     Z(t) = exp(i theta(t)) zeta(1/2 + it),
//
// which is real for real t and satisfies |Z(t)| = |zeta(1/2 + it)|.
//
// For large t the main sum plus the correction series C_0..C_K is used
// (K = correction order, 0..4).  At low heights the asymptotic expansion
// loses accuracy, so theta falls back to a complex log-gamma (t < 10) and
// Z to an Euler-Maclaurin evaluation of zeta (t < 200 by default).

#include <complex>

namespace zeta_ladder::rs {

// Below this height theta and Z use the direct (non-asymptotic) branch.
inline constexpr double kAsymptoticThreshold = 10.0;
inline constexpr int kMaxCorrectionOrder = 4;
inline constexpr int kDefaultCorrectionOrder = 4;
// Below this height the automatic branch prefers Euler-Maclaurin: the
// truncated correction series is only good to ~1e-5 near t = 10.
inline constexpr double kRiemannSiegelFloor = 200.0;

enum class Branch { automatic, riemann_siegel, euler_maclaurin };

struct RSPoint {
    double t = 0.0;
    double theta = 0.0;
    double z = 0.0;
    // Bound on |Z_exact(t) - z| from truncating the correction series.
    double remainder_bound = 0.0;
    // Estimated floating-point error of the evaluation itself.
    double rounding_bound = 0.0;
};

struct DerivativeEstimate {
    double value = 0.0;
    double error_estimate = 0.0;
    bool accuracy_warning = false;
};

/// theta(t) = Im log Gamma(1/4 + it/2) - (t/2) log(pi).
/// Throws DomainError for non-finite or non-positive t.
double theta(double t);

/// Extended-precision theta for callers that subtract large multiples of it.
long double theta_extended(long double t);

/// theta'(t), exact derivative of the branch used by theta().
double theta_prime(double t);

/// Evaluates Z(t).  The Riemann-Siegel branch truncates the correction
/// series after C_order and throws DomainError below t = 10; the
/// Euler-Maclaurin branch ignores the order.  Branch::automatic picks
/// Euler-Maclaurin below kRiemannSiegelFloor.
RSPoint z_value(double t, int correction_order = kDefaultCorrectionOrder,
                Branch branch = Branch::automatic);

/// Shorthand for z_value(t).z.
double z(double t);

/// |zeta(1/2 + it)| = |Z(t)|.
double zeta_mod(double t);

/// Z'(t) by Richardson-extrapolated central differences.
DerivativeEstimate z_derivative(double t);

/// Gabcke-type bound d_K t^(-(2K+3)/4) on the Riemann-Siegel remainder.
double remainder_bound(double t, int correction_order);

/// Complex log Gamma (principal branch, continuous for Re z > 0).
std::complex<double> log_gamma(std::complex<double> z);

/// zeta(s) by Euler-Maclaurin summation in extended precision.  Valid for
/// any s != 1; the number of terms grows like |Im s| / pi.
std::complex<double> zeta_em(std::complex<double> s);

}  // namespace zeta_ladder::rs
