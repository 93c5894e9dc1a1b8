#pragma once

// The ladder phi_1(t): the solution of
//
//     d phi_1 / dt = Z~^2(t) = Z^2(t) / D(t),
//
// anchored at phi_1(t0) = t0 - (1 - c) pi(t0), with c Euler's constant and
// pi the prime-counting function.  The solution is stored as piecewise
// Chebyshev antiderivatives, so phi_1 and its increments are available to
// near machine precision anywhere in the built range.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <utility>
#include <vector>

#include "zeta_ladder/zero_scan.hpp"

namespace zeta_ladder::ladder {

/// Denominator D(t) of Z~^2.
///   leading_log:            D = ln t
///   mean_square_calibrated: D = ln t + 1 + c - ln(2 pi), the choice for
///     which t - phi_1(t) grows like (1 - c) li(t) given that the mean of Z^2
///     is ln(t / 2 pi) + 2c.
enum class Normalization { leading_log, mean_square_calibrated };

double denominator(double t, Normalization normalization = Normalization::mean_square_calibrated);

/// Z~^2(t) = Z(t)^2 / D(t); t >= 10.
double z_tilde_sq(double t, Normalization normalization = Normalization::mean_square_calibrated);

/// Exact pi(x) from a bit sieve over odd numbers with cumulative counts per
/// 64-bit word.
class PrimePi {
public:
    explicit PrimePi(std::uint64_t limit);

    std::uint64_t limit() const noexcept { return limit_; }

    /// Number of primes <= x.  Throws ConfigurationError above the limit.
    std::uint64_t operator()(double x) const;
    std::uint64_t count(std::uint64_t n) const;

private:
    std::uint64_t limit_;
    std::vector<std::uint64_t> composite_bits_;  // bit i: 2i + 1 composite
    std::vector<std::uint32_t> prefix_;          // primes among odds before word w
};

struct LadderOptions {
    Normalization normalization = Normalization::mean_square_calibrated;
    // Chebyshev degree per panel.
    int degree = 64;
    // When set, every cached ordinate inside the range becomes a panel edge.
    std::shared_ptr<const ZeroCache> forced_nodes;
};

class LadderTable {
public:
    struct Panel {
        double a = 0.0;
        double b = 0.0;
        long double phi_a = 0.0L;
        std::vector<double> antiderivative;  // Chebyshev coefficients on [a, b]
    };

    LadderTable(double anchor_t, double anchor_phi, double tolerance, Normalization normalization,
                std::vector<Panel> panels);

    double anchor_t() const noexcept { return anchor_t_; }
    double anchor_phi() const noexcept { return anchor_phi_; }
    double tolerance() const noexcept { return tolerance_; }
    Normalization normalization() const noexcept { return normalization_; }
    double t_begin() const noexcept { return anchor_t_; }
    double t_end() const noexcept { return t_end_; }
    std::size_t panel_count() const noexcept { return panels_.size(); }

    /// phi_1(t) for t in [t_begin, t_end]; CoverageError otherwise.
    double phi(double t) const;
    long double phi_extended(double t) const;

    /// phi_1(t2) - phi_1(t1) without the anchor's rounding.
    double increment(double t1, double t2) const;

    /// The t with phi_1(t) = x; CoverageError outside [phi_1(t_begin), phi_1(t_end)].
    double preimage(double x) const;

    /// (t, phi_1(t)) at every panel edge.
    std::vector<std::pair<double, double>> samples() const;

private:
    const Panel& panel_for(double t) const;

    double anchor_t_;
    double anchor_phi_;
    double tolerance_;
    Normalization normalization_;
    std::vector<Panel> panels_;
    double t_end_;
};

/// Integrates the ladder equation on [t_start, t_end] with per-panel error
/// <= tol, anchored by the prime-counting law at t_start.  Throws
/// ConfigurationError when t_end exceeds the sieve limit.
LadderTable build_ladder(double t_start, double t_end, double tol, const PrimePi& pi,
                         const LadderOptions& options = {});

/// Same, with an explicit anchor value phi_1(t_start).
LadderTable build_ladder_anchored(double t_start, double t_end, double tol, double anchor_phi,
                                  const LadderOptions& options = {});

struct TanAlpha {
    double value = 0.0;
    // U lies in [T^(1/3 + eps), T / ln T].
    bool in_band = true;
    double band_lo = 0.0;
    double band_hi = 0.0;
};

/// Chord slope (phi_1(T+U) - phi_1(T)) / U; out-of-band U is flagged, not rejected.
TanAlpha tan_alpha(const LadderTable& table, double T, double U, double epsilon = 0.05);

/// R = [(T2 - phi_1(T2)) - (T1 - phi_1(T1))] / [(1 - c)(pi(T2) - pi(T1))].
double defect_increment_check(const LadderTable& table, double T1, double T2, const PrimePi& pi);

struct Substitution {
    double lhs = 0.0;
    double rhs = 0.0;
    // |lhs - rhs| / max(1, |rhs|)
    double residual = 0.0;
};

/// lhs = int_T^{T+U} f(phi_1(t)) Z~^2(t) dt, rhs = int_{phi_1(T)}^{phi_1(T+U)} f(x) dx.
/// Requires 0 < U <= T / ln T.
Substitution substitution_check(const LadderTable& table, double T, double U,
                                const std::function<double(double)>& f);

/// Integral of g(t) Z~^2(t) over [t1, t2]; 20-point Gauss-Legendre on pieces
/// of a quarter of the local mean zero gap.
double weighted_integral(const LadderTable& table, double t1, double t2,
                         const std::function<double(double)>& g);

/// Writes `t,phi1` rows at every panel edge (12 significant digits).
void export_table(const LadderTable& table, std::ostream& out);

}  // namespace zeta_ladder::ladder
