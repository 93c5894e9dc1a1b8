#include "zeta_ladder/ladder.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "zeta_ladder/errors.hpp"
#include "zeta_ladder/numeric.hpp"
#include "zeta_ladder/rs_core.hpp"

namespace zeta_ladder::ladder {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEuler = std::numbers::egamma;
// Panels are built in independent blocks of this length, then chained.
constexpr double kBlockLength = 512.0;
constexpr double kMinPanelWidth = 1e-4;

double mean_gap(double t) {
    return 2.0 * kPi / std::log(std::max(t, 16.0 * kPi) / (2.0 * kPi));
}

// Largest panel tried; a degree-n fit resolves roughly n / 8 zero gaps.
double max_width(double t, int degree) { return mean_gap(t) * degree / 8.0; }

struct ChebyshevFit {
    std::vector<double> coeffs;  // f = sum a_k T_k
    double tail = 0.0;
    // Coefficient level explained by rounding noise in Z.
    double noise = 0.0;
};

// cos(pi m / n) for m in [0, 2n).
std::vector<double> cosine_table(int n) {
    std::vector<double> c(2 * n);
    for (int m = 0; m < 2 * n; ++m) c[m] = std::cos(kPi * m / n);
    return c;
}

ChebyshevFit fit(double a, double b, int n, const std::vector<double>& cosines,
                 Normalization norm) {
    std::vector<double> f(n + 1);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (int j = 0; j <= n; ++j) f[j] = z_tilde_sq(mid + half * cosines[j], norm);
    const auto centre = rs::z_value(mid);
    const double peak = *std::max_element(f.begin(), f.end());
    const double noise =
        8.0 * std::sqrt(peak / denominator(mid, norm)) * centre.rounding_bound + 1e-15 * peak;
    f[0] *= 0.5;
    f[n] *= 0.5;
    ChebyshevFit out;
    out.coeffs.assign(n + 1, 0.0);
    for (int k = 0; k <= n; ++k) {
        double s = 0.0;
        for (int j = 0; j <= n; ++j) s += f[j] * cosines[(j * k) % (2 * n)];
        out.coeffs[k] = 2.0 * s / n;
    }
    out.coeffs[0] *= 0.5;
    out.coeffs[n] *= 0.5;
    for (int k = n - 3; k <= n; ++k) out.tail = std::max(out.tail, std::abs(out.coeffs[k]));
    out.noise = noise;
    return out;
}

// Coefficients of F(x) = int_{-1}^x f, given those of f.
std::vector<double> integrate_series(const std::vector<double>& a) {
    const std::size_t n = a.size() - 1;
    auto at = [&](std::size_t k) { return k <= n ? a[k] : 0.0; };
    std::vector<double> A(n + 2, 0.0);
    A[1] = a[0] - 0.5 * at(2);
    for (std::size_t k = 2; k <= n + 1; ++k) A[k] = (at(k - 1) - at(k + 1)) / (2.0 * k);
    double at_minus_one = 0.0;
    for (std::size_t k = 1; k <= n + 1; ++k) at_minus_one += (k % 2 == 0 ? 1.0 : -1.0) * A[k];
    A[0] = -at_minus_one;
    return A;
}

double clenshaw(const std::vector<double>& c, double x) {
    double b1 = 0.0;
    double b2 = 0.0;
    for (std::size_t k = c.size(); k-- > 1;) {
        const double b0 = 2.0 * x * b1 - b2 + c[k];
        b2 = b1;
        b1 = b0;
    }
    return x * b1 - b2 + c[0];
}

double panel_integral(const std::vector<double>& antiderivative, double a, double b) {
    return 0.5 * (b - a) * clenshaw(antiderivative, 1.0);
}

// Panels covering [lo, hi] with phi_a relative to lo.
std::vector<LadderTable::Panel> build_block(double lo, double hi, double tol,
                                            const LadderOptions& options) {
    std::vector<LadderTable::Panel> panels;
    const ZeroCache* nodes = options.forced_nodes.get();
    const int n = options.degree;
    const auto cosines = cosine_table(n);
    long double phi = 0.0L;
    double a = lo;
    double width = max_width(lo, n);
    while (a < hi) {
        double b = std::min(hi, a + width);
        if (nodes) {
            const std::size_t i = nodes->records_up_to(a);
            if (i < nodes->size()) {
                const double g = nodes->records()[i].gamma;
                if (g > a && g < b) b = g;
            }
        }
        const auto f = fit(a, b, n, cosines, options.normalization);
        const bool resolved = f.tail * (b - a) <= tol || f.tail <= f.noise;
        if (!resolved && (b - a) > kMinPanelWidth) {
            width = 0.5 * (b - a);
            continue;
        }
        LadderTable::Panel p;
        p.a = a;
        p.b = b;
        p.phi_a = phi;
        p.antiderivative = integrate_series(f.coeffs);
        phi += panel_integral(p.antiderivative, a, b);
        panels.push_back(std::move(p));
        a = b;
        width = std::min(max_width(a, n), 1.5 * width);
    }
    return panels;
}

LadderTable build(double t_start, double t_end, double tol, double anchor_phi,
                  const LadderOptions& options) {
    if (!std::isfinite(t_start) || !std::isfinite(t_end) || t_start < 10.0 || t_end < t_start) {
        throw PreconditionError("build_ladder: require 10 <= t_start <= t_end");
    }
    if (!(tol > 0.0)) throw PreconditionError("build_ladder: tolerance must be positive");
    if (options.degree < 4 || options.degree > 256) {
        throw PreconditionError("build_ladder: Chebyshev degree must be in [4, 256]");
    }
    const auto blocks = static_cast<std::size_t>(std::ceil((t_end - t_start) / kBlockLength));
    std::vector<std::vector<LadderTable::Panel>> parts(blocks);
    numeric::parallel_for(blocks, 0, [&](std::size_t i) {
        const double lo = t_start + kBlockLength * static_cast<double>(i);
        const double hi = std::min(t_end, lo + kBlockLength);
        parts[i] = build_block(lo, hi, tol, options);
    });
    std::vector<LadderTable::Panel> panels;
    long double offset = anchor_phi;
    for (auto& part : parts) {
        long double block_total = 0.0L;
        for (auto& p : part) {
            block_total = p.phi_a + panel_integral(p.antiderivative, p.a, p.b);
            p.phi_a += offset;
            panels.push_back(std::move(p));
        }
        offset += block_total;
    }
    return LadderTable(t_start, anchor_phi, tol, options.normalization, std::move(panels));
}

std::string format12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

}  // namespace

double denominator(double t, Normalization normalization) {
    if (!std::isfinite(t) || t <= 1.0) throw DomainError("denominator: t must exceed 1");
    const double log_t = std::log(t);
    if (normalization == Normalization::leading_log) return log_t;
    return log_t + 1.0 + kEuler - std::log(2.0 * kPi);
}

double z_tilde_sq(double t, Normalization normalization) {
    if (!std::isfinite(t) || t < 10.0) throw DomainError("z_tilde_sq: requires t >= 10");
    const double z = rs::z(t);
    return z * z / denominator(t, normalization);
}

PrimePi::PrimePi(std::uint64_t limit) : limit_(limit) {
    if (limit < 2) throw PreconditionError("PrimePi: limit must be at least 2");
    const std::uint64_t odd_count = limit / 2 + 1;  // indices i <-> 2i + 1 <= limit + 1
    composite_bits_.assign(odd_count / 64 + 1, 0);
    auto mark = [&](std::uint64_t i) { composite_bits_[i / 64] |= (1ull << (i % 64)); };
    mark(0);  // 1 is not prime
    for (std::uint64_t i = 1; (2 * i + 1) * (2 * i + 1) <= limit; ++i) {
        if (composite_bits_[i / 64] >> (i % 64) & 1ull) continue;
        const std::uint64_t p = 2 * i + 1;
        for (std::uint64_t m = p * p; m <= limit; m += 2 * p) mark(m / 2);
    }
    // Odd numbers past the limit are masked out as composite.
    for (std::uint64_t i = (limit + 1) / 2 + (limit % 2 == 0 ? 0 : 1); i < composite_bits_.size() * 64;
         ++i) {
        if (2 * i + 1 > limit) mark(i);
    }
    prefix_.assign(composite_bits_.size() + 1, 0);
    for (std::size_t w = 0; w < composite_bits_.size(); ++w) {
        prefix_[w + 1] = prefix_[w] + static_cast<std::uint32_t>(std::popcount(~composite_bits_[w]));
    }
}

std::uint64_t PrimePi::count(std::uint64_t n) const {
    if (n > limit_) {
        throw ConfigurationError("prime_pi: argument " + std::to_string(n) +
                                 " exceeds the sieve limit " + std::to_string(limit_));
    }
    if (n < 2) return 0;
    const std::uint64_t m = (n - 1) / 2;  // odd numbers 1..2m+1
    const std::uint64_t w = m / 64;
    const std::uint64_t bits = (m % 64 == 63) ? ~0ull : ((1ull << (m % 64 + 1)) - 1);
    const auto in_word = static_cast<std::uint64_t>(std::popcount(~composite_bits_[w] & bits));
    return 1 + prefix_[w] + in_word;
}

std::uint64_t PrimePi::operator()(double x) const {
    if (std::isnan(x) || x < 0.0) throw DomainError("prime_pi: x must be non-negative");
    if (x > static_cast<double>(limit_)) {
        throw ConfigurationError("prime_pi: x = " + format12(x) + " exceeds the sieve limit " +
                                 std::to_string(limit_));
    }
    return count(static_cast<std::uint64_t>(std::floor(x)));
}

LadderTable::LadderTable(double anchor_t, double anchor_phi, double tolerance,
                         Normalization normalization, std::vector<Panel> panels)
    : anchor_t_(anchor_t),
      anchor_phi_(anchor_phi),
      tolerance_(tolerance),
      normalization_(normalization),
      panels_(std::move(panels)),
      t_end_(panels_.empty() ? anchor_t : panels_.back().b) {}

const LadderTable::Panel& LadderTable::panel_for(double t) const {
    auto it = std::upper_bound(panels_.begin(), panels_.end(), t,
                               [](double v, const Panel& p) { return v < p.a; });
    if (it != panels_.begin()) --it;
    return *it;
}

long double LadderTable::phi_extended(double t) const {
    if (!(t >= anchor_t_ && t <= t_end_)) {
        throw CoverageError("ladder table does not cover t = " + format12(t), anchor_t_, t_end_);
    }
    if (panels_.empty()) return anchor_phi_;
    const Panel& p = panel_for(t);
    const double x = std::clamp((2.0 * t - p.a - p.b) / (p.b - p.a), -1.0, 1.0);
    return p.phi_a + 0.5L * (p.b - p.a) * clenshaw(p.antiderivative, x);
}

double LadderTable::phi(double t) const { return static_cast<double>(phi_extended(t)); }

double LadderTable::increment(double t1, double t2) const {
    return static_cast<double>(phi_extended(t2) - phi_extended(t1));
}

double LadderTable::preimage(double x) const {
    const double lo = phi(anchor_t_);
    const double hi = phi(t_end_);
    if (!(x >= lo && x <= hi)) {
        throw CoverageError("ladder preimage: value " + format12(x) + " outside the table range",
                            lo, hi);
    }
    if (panels_.empty()) return anchor_t_;
    auto it = std::upper_bound(panels_.begin(), panels_.end(), static_cast<long double>(x),
                               [](long double v, const Panel& p) { return v < p.phi_a; });
    if (it != panels_.begin()) --it;
    const auto f = [&](double t) { return static_cast<double>(phi_extended(t) - x); };
    const double fa = f(it->a);
    const double fb = f(it->b);
    if (fa > 0.0) return it->a;
    if (fb < 0.0) return it->b;
    return numeric::refine_root(f, it->a, it->b, fa, fb).x;
}

std::vector<std::pair<double, double>> LadderTable::samples() const {
    std::vector<std::pair<double, double>> out;
    out.reserve(panels_.size() + 1);
    out.emplace_back(anchor_t_, anchor_phi_);
    for (const auto& p : panels_) out.emplace_back(p.b, phi(p.b));
    return out;
}

LadderTable build_ladder(double t_start, double t_end, double tol, const PrimePi& pi,
                         const LadderOptions& options) {
    if (t_end > static_cast<double>(pi.limit())) {
        throw ConfigurationError("build_ladder: t_end exceeds the prime sieve limit");
    }
    const double anchor = t_start - (1.0 - kEuler) * static_cast<double>(pi(t_start));
    return build(t_start, t_end, tol, anchor, options);
}

LadderTable build_ladder_anchored(double t_start, double t_end, double tol, double anchor_phi,
                                  const LadderOptions& options) {
    return build(t_start, t_end, tol, anchor_phi, options);
}

TanAlpha tan_alpha(const LadderTable& table, double T, double U, double epsilon) {
    if (!std::isfinite(U) || U <= 0.0) throw PreconditionError("tan_alpha: U must be positive");
    TanAlpha out;
    out.band_lo = std::pow(T, 1.0 / 3.0 + epsilon);
    out.band_hi = T / std::log(T);
    out.in_band = U >= out.band_lo && U <= out.band_hi;
    out.value = table.increment(T, T + U) / U;
    return out;
}

double defect_increment_check(const LadderTable& table, double T1, double T2, const PrimePi& pi) {
    const auto p1 = pi(T1);
    const auto p2 = pi(T2);
    if (p1 == p2) throw DegenerateWindowError("defect_increment_check: no primes in [T1, T2]");
    const double defect = (T2 - T1) - table.increment(T1, T2);
    return defect / ((1.0 - kEuler) * (static_cast<double>(p2) - static_cast<double>(p1)));
}

double weighted_integral(const LadderTable& table, double t1, double t2,
                         const std::function<double(double)>& g) {
    if (t2 < t1) return -weighted_integral(table, t2, t1, g);
    table.phi(t1);
    table.phi(t2);
    const auto norm = table.normalization();
    auto integrand = [&](double t) { return g(t) * z_tilde_sq(t, norm); };
    long double sum = 0.0L;
    double a = t1;
    while (a < t2) {
        const double b = std::min(t2, a + 0.25 * mean_gap(a));
        sum += numeric::gauss20(integrand, a, b);
        a = b;
    }
    return static_cast<double>(sum);
}

Substitution substitution_check(const LadderTable& table, double T, double U,
                                const std::function<double(double)>& f) {
    if (!std::isfinite(U) || U <= 0.0 || U > T / std::log(T)) {
        throw PreconditionError("substitution_check: U must lie in (0, T / ln T]");
    }
    Substitution out;
    out.lhs = weighted_integral(table, T, T + U, [&](double t) { return f(table.phi(t)); });
    const double x1 = table.phi(T);
    const double x2 = table.phi(T + U);
    long double rhs = 0.0L;
    for (double a = x1; a < x2;) {
        const double b = std::min(x2, a + 0.25);
        rhs += numeric::gauss20(f, a, b);
        a = b;
    }
    out.rhs = static_cast<double>(rhs);
    out.residual = std::abs(out.lhs - out.rhs) / std::max(1.0, std::abs(out.rhs));
    return out;
}

void export_table(const LadderTable& table, std::ostream& out) {
    out << "t,phi1\n";
    for (const auto& [t, phi] : table.samples()) out << format12(t) << ',' << format12(phi) << '\n';
}

}  // namespace zeta_ladder::ladder
