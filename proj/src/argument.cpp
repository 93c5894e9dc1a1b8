#include "zeta_ladder/argument.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "zeta_ladder/errors.hpp"
#include "zeta_ladder/numeric.hpp"
#include "zeta_ladder/rs_core.hpp"

namespace zeta_ladder::argument {

namespace {

constexpr long double kPiL = std::numbers::pi_v<long double>;
constexpr double kPi = std::numbers::pi;
constexpr double kZeroFreeBelow = 14.0;

void require_height(double t, const char* where) {
    if (!std::isfinite(t) || t <= 0.0) {
        throw DomainError(std::string(where) + ": height must be finite and positive");
    }
}

// int_a^b theta on pieces of width <= max_piece (10-point Gauss-Legendre each).
long double theta_quadrature(long double a, long double b, long double max_piece) {
    if (b <= a) return 0.0L;
    const auto pieces = static_cast<int>(std::ceil((b - a) / max_piece));
    const long double w = (b - a) / pieces;
    long double sum = 0.0L;
    for (int i = 0; i < pieces; ++i) {
        const long double lo = a + w * i;
        sum += numeric::gauss10_extended([](long double u) { return rs::theta_extended(u); }, lo,
                                         lo + w);
    }
    return sum;
}

// The nearest singularities of theta sit at +-i/2, so [0, 10] needs short pieces.
long double theta_quadrature_low(long double a, long double b) {
    return theta_quadrature(a, b, 0.25L);
}

// Antiderivative of the asymptotic expansion of theta.
long double theta_antiderivative(long double T) {
    const long double inv2 = 1.0L / (T * T);
    return T * T / 4.0L * std::log(T / (2.0L * kPiL)) - 3.0L * T * T / 8.0L - kPiL * T / 8.0L +
           std::log(T) / 48.0L -
           inv2 * (7.0L / 11520.0L +
                   inv2 * (31.0L / 322560.0L + inv2 * (127.0L / 2580480.0L +
                                                       inv2 * (511.0L / 9732096.0L))));
}

long double theta_integral_at_switch() {
    static const long double value = theta_quadrature_low(0.0L, rs::kAsymptoticThreshold);
    return value;
}

// int_a^b theta for a >= 0, choosing the piece width by height.
long double theta_integral_between(long double a, long double b) {
    const long double split = rs::kAsymptoticThreshold;
    long double sum = 0.0L;
    if (a < split) {
        const long double hi = std::min(b, split);
        sum += theta_quadrature_low(a, hi);
        a = hi;
    }
    if (b > a) sum += theta_quadrature(a, b, 1.0L);
    return sum;
}

}  // namespace

double arg_zeta_path(double t) {
    require_height(t, "arg_zeta_path");
    // Re zeta(2 + it) > 0, so the vertical leg ends on the principal branch.
    std::complex<double> prev = rs::zeta_em({2.0, t});
    double arg = std::arg(prev);
    double sigma = 2.0;
    double step = 0.125;
    constexpr double kMaxIncrement = kPi / 4.0;
    while (sigma > 0.5) {
        const double h = std::min(step, sigma - 0.5);
        const auto mid = rs::zeta_em({sigma - 0.5 * h, t});
        const auto next = rs::zeta_em({sigma - h, t});
        const double d1 = std::arg(mid / prev);
        const double d2 = std::arg(next / mid);
        const double delta = std::arg(next / prev);
        const bool ok = std::abs(d1) <= kMaxIncrement && std::abs(d2) <= kMaxIncrement &&
                        std::abs(d1 + d2 - delta) < 1e-9 && std::abs(next) > 1e-300;
        if (!ok) {
            step = 0.5 * h;
            if (step < 1e-12) throw ExceptionalPointError("arg_zeta_path: step underflow", t);
            continue;
        }
        arg += delta;
        sigma -= h;
        prev = next;
        step = std::min(0.125, 2.0 * h);
    }
    return arg;
}

SPoint s_path_oracle(double t) {
    return {t, arg_zeta_path(t) / kPi, BranchSource::path_tracking};
}

SPoint s_of_t(double t, const ZeroCache& cache) {
    require_height(t, "s_of_t");
    const long n = cache.counting(t);
    return {t, static_cast<double>(n) - 1.0 - rs::theta(t) / kPi, BranchSource::counting_identity};
}

long double theta_integral(long double T) {
    if (!std::isfinite(static_cast<double>(T)) || T < 0.0L) {
        throw DomainError("theta_integral: T must be finite and non-negative");
    }
    const long double split = rs::kAsymptoticThreshold;
    if (T <= split) return theta_quadrature_low(0.0L, T);
    return theta_integral_at_switch() + theta_antiderivative(T) - theta_antiderivative(split);
}

S1Value s1_of_T(double T, const ZeroCache& cache, S1Method method) {
    if (!std::isfinite(T) || T < 0.0) throw DomainError("s1_of_T: T must be finite and >= 0");
    S1Value out{T, 0.0, method};
    if (T == 0.0) return out;
    const long n_total = cache.counting(T);
    if (method == S1Method::closed_form) {
        const long double Tl = T;
        const long double value = static_cast<long double>(n_total) * Tl -
                                  cache.weighted_gamma_sum(T) - Tl - theta_integral(Tl) / kPiL;
        out.value = static_cast<double>(value);
        return out;
    }
    // S = N - 1 - theta/pi with N constant between consecutive zeros.
    const std::size_t upto = cache.records_up_to(T);
    long double sum = 0.0L;
    long double x = 0.0L;
    long n = cache.count_below();
    auto piece = [&](long double a, long double b, long count) {
        return static_cast<long double>(count - 1) * (b - a) - theta_integral_between(a, b) / kPiL;
    };
    for (std::size_t i = 0; i < upto; ++i) {
        const auto& r = cache.records()[i];
        sum += piece(x, r.gamma, n);
        x = r.gamma;
        n += r.order;
    }
    sum += piece(x, T, n);
    out.value = static_cast<double>(sum);
    return out;
}

double mean_omega(double L, const ZeroCache& cache) {
    if (!std::isfinite(L) || L <= 0.0) throw DomainError("mean_omega: L must be positive");
    return kPi * s1_of_T(L, cache).value / L;
}

ArgumentFunction::ArgumentFunction(std::shared_ptr<const ZeroCache> cache)
    : cache_(std::move(cache)) {
    if (!cache_) throw PreconditionError("ArgumentFunction: null cache");
    if (cache_->covered_lo() > kZeroFreeBelow || cache_->count_below() != 0) {
        throw CoverageError("ArgumentFunction: cache must start below the first zero",
                            cache_->covered_lo(), cache_->covered_hi());
    }
    const auto& recs = cache_->records();
    s1_at_zero_.resize(recs.size());
    if (recs.empty()) return;
    s1_at_zero_[0] = -static_cast<long double>(recs[0].gamma) - theta_integral(recs[0].gamma) / kPiL;
    long n = recs[0].order;
    for (std::size_t i = 1; i < recs.size(); ++i) {
        const long double a = recs[i - 1].gamma;
        const long double b = recs[i].gamma;
        s1_at_zero_[i] = s1_at_zero_[i - 1] + static_cast<long double>(n - 1) * (b - a) -
                         theta_integral_between(a, b) / kPiL;
        n += recs[i].order;
    }
}

void ArgumentFunction::require_coverage(double hi) const {
    if (!(hi <= cache_->covered_hi())) {
        throw CoverageError("zero cache does not reach the requested height", 0.0, hi);
    }
}

double ArgumentFunction::s(double t) const { return s_of_t(t, *cache_).s; }

double ArgumentFunction::s1(double t) const {
    if (!std::isfinite(t) || t < 0.0) throw DomainError("s1: t must be finite and >= 0");
    if (t == 0.0) return 0.0;
    require_coverage(t);
    const std::size_t j = cache_->records_up_to(t);
    if (j == 0) return static_cast<double>(-static_cast<long double>(t) - theta_integral(t) / kPiL);
    const auto& r = cache_->records()[j - 1];
    const long n = cache_->counting(t);
    const long double a = r.gamma;
    const long double value = s1_at_zero_[j - 1] + static_cast<long double>(n - 1) * (t - a) -
                              theta_integral_between(a, t) / kPiL;
    return static_cast<double>(value);
}

double ArgumentFunction::s1_closed_form(double t) const { return s1_of_T(t, *cache_).value; }

double ArgumentFunction::mean_omega(double L) const {
    if (!std::isfinite(L) || L <= 0.0) throw DomainError("mean_omega: L must be positive");
    return kPi * s1(L) / L;
}

}  // namespace zeta_ladder::argument
