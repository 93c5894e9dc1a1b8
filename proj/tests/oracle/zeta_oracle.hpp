#pragma once

// Independent quad-precision reference for zeta on the critical line.
//
// Written separately from the library: binary128 arithmetic throughout,
// Stirling log-gamma with an explicit Bernoulli table, and plain
// Euler-Maclaurin summation for zeta.  Slow but trustworthy to ~1e-15
// absolute in the ranges used by the tests (t <= 1.1e5).

#include <quadmath.h>

#include <array>
#include <cmath>
#include <stdexcept>

namespace zeta_oracle {

using quad = __float128;

inline quad pi() {
    static const quad value = acosq(quad(-1));
    return value;
}

struct cquad {
    quad re = 0;
    quad im = 0;
};

inline cquad operator+(cquad a, cquad b) { return {a.re + b.re, a.im + b.im}; }
inline cquad operator-(cquad a, cquad b) { return {a.re - b.re, a.im - b.im}; }
inline cquad operator*(cquad a, cquad b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline cquad operator*(quad a, cquad b) { return {a * b.re, a * b.im}; }
inline cquad operator/(cquad a, cquad b) {
    const quad d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
inline quad cabs(cquad a) { return hypotq(a.re, a.im); }
inline cquad clog(cquad a) { return {logq(cabs(a)), atan2q(a.im, a.re)}; }

// B_2, B_4, ..., B_30 as exact fractions.
inline const std::array<std::pair<double, double>, 15>& bernoulli_fractions() {
    static const std::array<std::pair<double, double>, 15> b{{
        {1.0, 6.0},
        {-1.0, 30.0},
        {1.0, 42.0},
        {-1.0, 30.0},
        {5.0, 66.0},
        {-691.0, 2730.0},
        {7.0, 6.0},
        {-3617.0, 510.0},
        {43867.0, 798.0},
        {-174611.0, 330.0},
        {854513.0, 138.0},
        {-236364091.0, 2730.0},
        {8553103.0, 6.0},
        {-23749461029.0, 870.0},
        {8615841276005.0, 14322.0},
    }};
    return b;
}

inline quad bernoulli(int k) {  // B_2k, k = 1..15
    const auto& [num, den] = bernoulli_fractions().at(static_cast<std::size_t>(k - 1));
    return static_cast<quad>(num) / static_cast<quad>(den);
}

// log Gamma(z) for Re z > 0, continuous branch.
inline cquad log_gamma(cquad z) {
    cquad shift{0, 0};
    while (z.re < 40) {
        shift = shift - clog(z);
        z.re += 1;
    }
    const cquad lz = clog(z);
    cquad out = (z - cquad{quad(0.5), 0}) * lz - z + cquad{quad(0.5) * logq(2 * pi()), 0};
    const cquad inv = cquad{1, 0} / z;
    const cquad inv2 = inv * inv;
    cquad p = inv;
    for (int k = 1; k <= 15; ++k) {
        const quad c = bernoulli(k) / (static_cast<quad>(2 * k) * static_cast<quad>(2 * k - 1));
        out = out + c * p;
        p = p * inv2;
    }
    return out + shift;
}

inline quad theta(quad t) {
    return log_gamma({quad(0.25), t / 2}).im - t / 2 * logq(pi());
}

// n^-s
inline cquad power_neg(quad n, cquad s) {
    const quad ln = logq(n);
    const quad mag = expq(-s.re * ln);
    return {mag * cosq(s.im * ln), -mag * sinq(s.im * ln)};
}

inline cquad zeta(cquad s) {
    const quad t = fabsq(s.im);
    // With N ~ t/2 the Bernoulli tail decays like (|s| / (2 pi N))^(2k) ~ pi^(-2k).
    const long n_terms = static_cast<long>(ceilq(t / 2)) + 40;
    cquad sum{0, 0};
    for (long n = 1; n < n_terms; ++n) sum = sum + power_neg(static_cast<quad>(n), s);
    const quad big_n = static_cast<quad>(n_terms);
    const cquad np = power_neg(big_n, s);
    sum = sum + big_n * np / (s - cquad{1, 0}) + quad(0.5) * np;
    cquad rising = s;
    quad inv_pow = 1 / big_n;
    quad factorial = 2;  // (2k)!
    for (int k = 1; k <= 15; ++k) {
        const cquad term = (bernoulli(k) / factorial) * (rising * np) * cquad{inv_pow, 0};
        sum = sum + term;
        rising = rising * (s + cquad{static_cast<quad>(2 * k - 1), 0}) *
                 (s + cquad{static_cast<quad>(2 * k), 0});
        inv_pow /= big_n * big_n;
        factorial *= static_cast<quad>(2 * k + 1) * static_cast<quad>(2 * k + 2);
    }
    return sum;
}

inline quad z(quad t) {
    const quad th = theta(t);
    const cquad zeta_val = zeta({quad(0.5), t});
    return cosq(th) * zeta_val.re - sinq(th) * zeta_val.im;
}

inline double z(double t) { return static_cast<double>(z(static_cast<quad>(t))); }
inline double theta(double t) { return static_cast<double>(theta(static_cast<quad>(t))); }
inline double zeta_abs(double t) {
    return static_cast<double>(cabs(zeta({quad(0.5), static_cast<quad>(t)})));
}

// Refines a zero of Z inside [lo, hi] (sign change required) by Illinois
// regula falsi in quad precision.
inline double refine_zero(double lo_d, double hi_d) {
    quad lo = lo_d;
    quad hi = hi_d;
    quad flo = z(lo);
    quad fhi = z(hi);
    if (flo * fhi > 0) throw std::runtime_error("oracle: zero not bracketed");
    int side = 0;
    for (int it = 0; it < 200 && hi - lo > quad(1e-22) * hi; ++it) {
        const quad mid = (lo * fhi - hi * flo) / (fhi - flo);
        const quad fm = z(mid);
        if (fm == 0) return static_cast<double>(mid);
        if (fm * flo < 0) {
            hi = mid;
            fhi = fm;
            if (side == -1) flo /= 2;
            side = -1;
        } else {
            lo = mid;
            flo = fm;
            if (side == 1) fhi /= 2;
            side = 1;
        }
    }
    return static_cast<double>((lo + hi) / 2);
}

// Euler's constant by H_n - log n - 1/(2n) + 1/(12n^2) - 1/(120 n^4) + ...
inline double euler_gamma() {
    const long n = 100000;
    quad h = 0;
    for (long k = n; k >= 1; --k) h += 1 / static_cast<quad>(k);
    const quad nq = n;
    const quad n2 = nq * nq;
    return static_cast<double>(h - logq(nq) - 1 / (2 * nq) + 1 / (12 * n2) - 1 / (120 * n2 * n2));
}

}  // namespace zeta_oracle
