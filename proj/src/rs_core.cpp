#include "zeta_ladder/rs_core.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "zeta_ladder/errors.hpp"

namespace zeta_ladder::rs {

namespace {

constexpr long double kPiL = std::numbers::pi_v<long double>;
constexpr long double kTwoPiL = 2.0L * kPiL;
constexpr double kPi = std::numbers::pi;

void require_height(double t, const char* where) {
    if (!std::isfinite(t) || t <= 0.0) {
        throw DomainError(std::string(where) + ": height must be finite and positive");
    }
}

// log(n) and 1/sqrt(n) for the main sums; heights up to ~2.7e10.
struct SumTables {
    static constexpr std::size_t kSize = 1u << 16;
    std::vector<long double> log_n;
    std::vector<double> inv_sqrt_n;

    SumTables() : log_n(kSize), inv_sqrt_n(kSize) {
        for (std::size_t n = 1; n < kSize; ++n) {
            log_n[n] = std::log(static_cast<long double>(n));
            inv_sqrt_n[n] = 1.0 / std::sqrt(static_cast<double>(n));
        }
    }
};

const SumTables& sum_tables() {
    static const SumTables tables;
    return tables;
}

long double log_of(std::size_t n) {
    const auto& tab = sum_tables();
    return n < SumTables::kSize ? tab.log_n[n] : std::log(static_cast<long double>(n));
}

double inv_sqrt_of(std::size_t n) {
    const auto& tab = sum_tables();
    return n < SumTables::kSize ? tab.inv_sqrt_n[n] : 1.0 / std::sqrt(static_cast<double>(n));
}

// Phase reduced to [-pi, pi] before leaving extended precision.
double reduce_phase(long double phase) {
    constexpr long double kInvTwoPi = 1.0L / kTwoPiL;
    const auto k = static_cast<long long>(phase * kInvTwoPi);
    return static_cast<double>(phase - static_cast<long double>(k) * kTwoPiL);
}

// Truncated power series in h = p - 1/2 of the Riemann-Siegel correction
// functions C_0..C_4, built from Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p).
// Psi is entire, so its Taylor series about p = 1/2 converges on [0, 1].
struct CorrectionPolynomials {
    static constexpr int kDegree = 64;
    std::array<std::array<double, kDegree + 1>, kMaxCorrectionOrder + 1> coeff{};

    CorrectionPolynomials() {
        using Series = std::array<long double, kDegree + 1>;
        // Taylor coefficients by the Cauchy integral on |h| = 1, sampled with
        // the trapezoid rule.  Dividing the two cosine series instead is
        // unstable: 1/cos(2 pi h) alone has radius of convergence 1/4.
        constexpr int kSamples = 512;
        using cld = std::complex<long double>;
        auto psi_at = [](cld h) {
            const cld num = std::cos(2.0L * kPiL * h * h - 5.0L * kPiL / 8.0L);
            const cld den = -std::cos(2.0L * kPiL * h);
            return num / den;
        };
        std::array<cld, kSamples> samples{};
        for (int j = 0; j < kSamples; ++j) {
            samples[j] = psi_at(std::polar(1.0L, kTwoPiL * j / kSamples));
        }
        Series psi{};
        for (int n = 0; n <= kDegree; ++n) {
            cld acc{0.0L, 0.0L};
            for (int j = 0; j < kSamples; ++j) {
                acc += samples[j] * std::polar(1.0L, -kTwoPiL * ((static_cast<long>(n) * j) % kSamples) / kSamples);
            }
            psi[n] = acc.real() / kSamples;
        }

        // d^m Psi / dh^m as a series.
        auto derivative = [&](int m) {
            Series out{};
            for (int n = m; n <= kDegree; ++n) {
                long double f = 1.0L;
                for (int j = 0; j < m; ++j) f *= static_cast<long double>(n - j);
                out[n - m] = psi[n] * f;
            }
            return out;
        };
        const long double pi2 = kPiL * kPiL;
        const long double pi4 = pi2 * pi2;
        const long double pi6 = pi4 * pi2;
        const long double pi8 = pi4 * pi4;
        struct Term {
            int order;
            int derivative;
            long double factor;
        };
        const std::array terms{
            Term{0, 0, 1.0L},
            Term{1, 3, -1.0L / (96.0L * pi2)},
            Term{2, 2, 1.0L / (64.0L * pi2)},
            Term{2, 6, 1.0L / (18432.0L * pi4)},
            Term{3, 1, -1.0L / (64.0L * pi2)},
            Term{3, 5, -1.0L / (3840.0L * pi4)},
            Term{3, 9, -1.0L / (5308416.0L * pi6)},
            Term{4, 0, 1.0L / (128.0L * pi2)},
            Term{4, 4, 19.0L / (24576.0L * pi4)},
            Term{4, 8, 11.0L / (5898240.0L * pi6)},
            Term{4, 12, 1.0L / (2038431744.0L * pi8)},
        };
        std::array<Series, kMaxCorrectionOrder + 1> acc{};
        for (const auto& term : terms) {
            const Series d = derivative(term.derivative);
            for (int n = 0; n <= kDegree; ++n) acc[term.order][n] += term.factor * d[n];
        }
        for (int k = 0; k <= kMaxCorrectionOrder; ++k) {
            for (int n = 0; n <= kDegree; ++n) coeff[k][n] = static_cast<double>(acc[k][n]);
        }
    }

    double eval(int order, double h) const {
        const auto& c = coeff[order];
        double acc = 0.0;
        for (int n = kDegree; n >= 0; --n) acc = acc * h + c[n];
        return acc;
    }
};

const CorrectionPolynomials& corrections() {
    static const CorrectionPolynomials polys;
    return polys;
}

// Bernoulli ratios B_2k / (2k)! = (-1)^(k+1) 2 zeta(2k) / (2 pi)^2k.
struct BernoulliRatios {
    static constexpr int kCount = 60;
    std::array<long double, kCount + 1> value{};

    BernoulliRatios() {
        long double two_pi_pow = 1.0L;
        for (int k = 1; k <= kCount; ++k) {
            two_pi_pow *= kTwoPiL * kTwoPiL;
            long double zeta2k = 0.0L;
            if (k == 1) {
                zeta2k = kPiL * kPiL / 6.0L;
            } else if (k == 2) {
                zeta2k = kPiL * kPiL * kPiL * kPiL / 90.0L;
            } else {
                for (int n = 200; n >= 1; --n) {
                    zeta2k += std::pow(static_cast<long double>(n), -2.0L * k);
                }
            }
            value[k] = (k % 2 == 1 ? 2.0L : -2.0L) * zeta2k / two_pi_pow;
        }
    }
};

const BernoulliRatios& bernoulli() {
    static const BernoulliRatios b;
    return b;
}

double theta_direct(double t) {
    const std::complex<double> lg = log_gamma({0.25, 0.5 * t});
    return lg.imag() - 0.5 * t * std::log(kPi);
}

std::complex<double> digamma(std::complex<double> z) {
    std::complex<double> shift{0.0, 0.0};
    while (z.real() < 15.0) {
        shift -= 1.0 / z;
        z += 1.0;
    }
    const std::complex<double> inv = 1.0 / z;
    const std::complex<double> inv2 = inv * inv;
    // B_2k / (2k) for k = 1..7
    constexpr std::array<double, 7> c{1.0 / 12.0,    -1.0 / 120.0,  1.0 / 252.0,  -1.0 / 240.0,
                                      1.0 / 132.0,   -691.0 / 32760.0, 1.0 / 12.0};
    std::complex<double> series{0.0, 0.0};
    std::complex<double> p = inv2;
    for (double ck : c) {
        series += ck * p;
        p *= inv2;
    }
    return shift + std::log(z) - 0.5 * inv - series;
}

}  // namespace

std::complex<double> log_gamma(std::complex<double> z) {
    if (z.real() <= 0.0) throw DomainError("log_gamma: requires Re z > 0");
    std::complex<double> shift{0.0, 0.0};
    while (z.real() < 15.0) {
        shift -= std::log(z);
        z += 1.0;
    }
    // Stirling series with B_2k / (2k (2k-1)), k = 1..8.
    constexpr std::array<double, 8> c{1.0 / 12.0,     -1.0 / 360.0,     1.0 / 1260.0,
                                      -1.0 / 1680.0,  1.0 / 1188.0,     -691.0 / 360360.0,
                                      1.0 / 156.0,    -3617.0 / 122400.0};
    const std::complex<double> inv = 1.0 / z;
    const std::complex<double> inv2 = inv * inv;
    std::complex<double> series{0.0, 0.0};
    std::complex<double> p = inv;
    for (double ck : c) {
        series += ck * p;
        p *= inv2;
    }
    return shift + (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + series;
}

long double theta_extended(long double t) {
    if (!std::isfinite(static_cast<double>(t)) || t <= 0.0L) {
        throw DomainError("theta: height must be finite and positive");
    }
    if (t < kAsymptoticThreshold) return theta_direct(static_cast<double>(t));
    const long double inv = 1.0L / t;
    const long double inv2 = inv * inv;
    const long double tail =
        inv * (1.0L / 48.0L +
               inv2 * (7.0L / 5760.0L +
                       inv2 * (31.0L / 80640.0L +
                               inv2 * (127.0L / 430080.0L + inv2 * (511.0L / 1216512.0L)))));
    return 0.5L * t * std::log(t / kTwoPiL) - 0.5L * t - kPiL / 8.0L + tail;
}

double theta(double t) {
    require_height(t, "theta");
    return static_cast<double>(theta_extended(t));
}

double theta_prime(double t) {
    require_height(t, "theta_prime");
    if (t < kAsymptoticThreshold) {
        return 0.5 * digamma({0.25, 0.5 * t}).real() - 0.5 * std::log(kPi);
    }
    const double inv2 = 1.0 / (t * t);
    return 0.5 * std::log(t / (2.0 * kPi)) -
           inv2 * (1.0 / 48.0 +
                   inv2 * (7.0 / 1920.0 +
                           inv2 * (31.0 / 16128.0 +
                                   inv2 * (889.0 / 430080.0 + inv2 * (4599.0 / 1216512.0)))));
}

double remainder_bound(double t, int correction_order) {
    constexpr std::array<double, kMaxCorrectionOrder + 1> d{0.127, 0.053, 0.011, 0.031, 0.017};
    if (correction_order < 0 || correction_order > kMaxCorrectionOrder) {
        throw DomainError("remainder_bound: correction order must be in 0..4");
    }
    return d[correction_order] * std::pow(t, -(2.0 * correction_order + 3.0) / 4.0);
}

std::complex<double> zeta_em(std::complex<double> s_in) {
    using cld = std::complex<long double>;
    const cld s{s_in.real(), s_in.imag()};
    if (s == cld{1.0L, 0.0L}) throw DomainError("zeta_em: pole at s = 1");
    const long double sigma = s.real();
    const long double t = s.imag();
    const std::size_t n_terms =
        static_cast<std::size_t>(std::ceil(std::abs(static_cast<double>(t)) / std::numbers::pi)) + 20;

    auto power_neg_s = [&](std::size_t n) {
        const long double ln = log_of(n);
        const double mag = std::exp(static_cast<double>(-sigma * ln));
        const double ph = reduce_phase(t * ln);
        return cld{mag * std::cos(ph), -mag * std::sin(ph)};
    };

    cld sum{0.0L, 0.0L};
    for (std::size_t n = 1; n < n_terms; ++n) sum += power_neg_s(n);

    const long double big_n = static_cast<long double>(n_terms);
    const cld n_pow = power_neg_s(n_terms);  // N^-s
    sum += n_pow * big_n / (s - 1.0L) + 0.5L * n_pow;

    const auto& b = bernoulli();
    cld rising = s;  // s (s+1) ... (s+2k-2)
    long double n_inv_pow = 1.0L / big_n;  // N^-(2k-1)
    long double last = INFINITY;
    for (int k = 1; k <= BernoulliRatios::kCount; ++k) {
        const cld term = b.value[k] * rising * n_pow * n_inv_pow;
        const long double mag = std::abs(term);
        sum += term;
        if (mag < 1e-21L * std::abs(sum) || mag > last) break;
        last = mag;
        rising *= (s + static_cast<long double>(2 * k - 1)) * (s + static_cast<long double>(2 * k));
        n_inv_pow /= big_n * big_n;
    }
    return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

RSPoint z_value(double t, int correction_order, Branch branch) {
    require_height(t, "z_value");
    if (correction_order < 0 || correction_order > kMaxCorrectionOrder) {
        throw DomainError("z_value: correction order must be in 0..4");
    }
    if (branch == Branch::automatic) {
        branch = t < kRiemannSiegelFloor ? Branch::euler_maclaurin : Branch::riemann_siegel;
    }
    if (branch == Branch::riemann_siegel && t < kAsymptoticThreshold) {
        throw DomainError("z_value: Riemann-Siegel branch requires t >= 10");
    }
    RSPoint out;
    out.t = t;
    const long double th = theta_extended(t);
    out.theta = static_cast<double>(th);

    if (branch == Branch::euler_maclaurin) {
        const std::complex<double> zeta = zeta_em({0.5, t});
        const std::complex<double> rot = std::polar(1.0, out.theta);
        out.z = (rot * zeta).real();
        out.remainder_bound = 0.0;
        out.rounding_bound = 1e-13 * std::sqrt(1.0 + t);
        return out;
    }

    const long double a = std::sqrt(static_cast<long double>(t) / kTwoPiL);
    const auto n_max = static_cast<std::size_t>(a);
    const long double tl = t;
    double sum = 0.0;
    for (std::size_t n = 1; n <= n_max; ++n) {
        sum += inv_sqrt_of(n) * std::cos(reduce_phase(th - tl * log_of(n)));
    }
    const double p = static_cast<double>(a - static_cast<long double>(n_max));
    const double h = p - 0.5;
    const double inv_a = static_cast<double>(1.0L / a);
    const auto& polys = corrections();
    double correction = 0.0;
    double a_pow = 1.0;
    for (int k = 0; k <= correction_order; ++k) {
        correction += polys.eval(k, h) * a_pow;
        a_pow *= inv_a;
    }
    const double sign = (n_max % 2 == 1) ? 1.0 : -1.0;  // (-1)^(N-1)
    out.z = 2.0 * sum + sign * std::sqrt(inv_a) * correction;
    // Rounding: ulp of the extended-precision phases t log n summed over the
    // 2 sqrt(N) weight of the main sum.
    const double n_d = static_cast<double>(n_max);
    out.remainder_bound = remainder_bound(t, correction_order);
    out.rounding_bound = 10.0 * std::sqrt(n_d) * (t * (1.0 + std::log(n_d)) * 0x1p-63 + 1e-16);
    return out;
}

double z(double t) { return z_value(t).z; }

double zeta_mod(double t) { return std::abs(z_value(t).z); }

DerivativeEstimate z_derivative(double t) {
    require_height(t, "z_derivative");
    constexpr int kLevels = 5;
    const double omega = std::max(1.0, 0.5 * std::log(t / (2.0 * kPi)));
    double h = std::min(0.25 / omega, 0.25 * t);
    std::array<std::array<double, kLevels>, kLevels> table{};
    DerivativeEstimate out;
    for (int i = 0; i < kLevels; ++i) {
        if (h < 1e-8 * t) {
            out.accuracy_warning = true;
            break;
        }
        table[i][0] = (z(t + h) - z(t - h)) / (2.0 * h);
        double factor = 4.0;
        for (int j = 1; j <= i; ++j) {
            table[i][j] = table[i][j - 1] + (table[i][j - 1] - table[i - 1][j - 1]) / (factor - 1.0);
            factor *= 4.0;
        }
        h *= 0.5;
    }
    out.value = table[kLevels - 1][kLevels - 1];
    // Difference of the last two diagonal entries plus a rounding floor.
    const double noise = 1e-13 * std::sqrt(t) / (h * 2.0);
    out.error_estimate =
        std::abs(table[kLevels - 1][kLevels - 1] - table[kLevels - 2][kLevels - 2]) + noise;
    if (out.error_estimate > 1e-6) out.accuracy_warning = true;
    return out;
}

}  // namespace zeta_ladder::rs
