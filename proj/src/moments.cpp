#include "zeta_ladder/moments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "zeta_ladder/errors.hpp"
#include "zeta_ladder/numeric.hpp"
#include "zeta_ladder/rs_core.hpp"

namespace zeta_ladder::moments {

namespace {

constexpr double kPi = std::numbers::pi;

double mean_gap(double t) {
    return 2.0 * kPi / std::log(std::max(t, 16.0 * kPi) / (2.0 * kPi));
}

void check_window(double T, double U, int k) {
    if (!std::isfinite(T) || T < 10.0) throw PreconditionError("moment: T must be >= 10");
    if (!std::isfinite(U) || U <= 0.0) throw PreconditionError("moment: U must be positive");
    if (k < 1) throw PreconditionError("moment: k must be >= 1");
}

double power2k(double x, int k) { return std::pow(x * x, k); }

// Sums rule(f, x, y) over pieces between breakpoints, each cut to at most
// `fraction` of the local mean zero gap.
template <class F, class Rule>
long double piecewise(const std::vector<double>& breaks, F&& f, Rule&& rule, double fraction) {
    long double sum = 0.0L;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        double a = breaks[i];
        const double b = breaks[i + 1];
        while (a < b) {
            const double c = std::min(b, a + fraction * mean_gap(a));
            sum += rule(f, a, c);
            a = c;
        }
    }
    return sum;
}

// Window ends plus every zero ordinate strictly inside.
std::vector<double> zero_breaks(double a, double b, const ZeroCache& cache) {
    std::vector<double> out{a};
    for (std::size_t i = cache.records_up_to(a); i < cache.size(); ++i) {
        const double g = cache.records()[i].gamma;
        if (g >= b) break;
        if (g > a) out.push_back(g);
    }
    out.push_back(b);
    return out;
}

std::string format12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

}  // namespace

double gaussian_moment_coefficient(int k) {
    if (k < 1) throw PreconditionError("moment coefficient: k must be >= 1");
    // (2k)! / k! = (k+1)(k+2)...(2k)
    double c = 1.0;
    for (int j = k + 1; j <= 2 * k; ++j) c *= j;
    return c / std::pow(2.0 * kPi, 2 * k);
}

double plain_integral(double a, double b, int k, bool use_s1,
                      const argument::ArgumentFunction& arg) {
    if (!(b >= a)) throw PreconditionError("plain_integral: require a <= b");
    if (k < 1) throw PreconditionError("plain_integral: k must be >= 1");
    arg.require_coverage(b);
    const auto breaks = zero_breaks(a, b, arg.cache());
    const auto f = [&](double t) { return power2k(use_s1 ? arg.s1(t) : arg.s(t), k); };
    const auto rule = [](const auto& g, double x, double y) { return numeric::gauss20(g, x, y); };
    return static_cast<double>(piecewise(breaks, f, rule, 0.5));
}

MomentEstimate s_moment(double T, double U, int k, const argument::ArgumentFunction& arg) {
    check_window(T, U, k);
    MomentEstimate out;
    out.kind = MomentKind::s_moment;
    out.T = T;
    out.U = U;
    out.k = k;
    out.raw_integral = plain_integral(T, T + U, k, false, arg);
    out.normalizer = gaussian_moment_coefficient(k) * U * std::pow(std::log(std::log(T)), k);
    out.ratio = out.raw_integral / out.normalizer;
    return out;
}

MomentEstimate s1_moment(double T, double U, int k, const argument::ArgumentFunction& arg) {
    check_window(T, U, k);
    MomentEstimate out;
    out.kind = MomentKind::s1_moment;
    out.T = T;
    out.U = U;
    out.k = k;
    out.raw_integral = plain_integral(T, T + U, k, true, arg);
    out.normalizer = U;
    out.ratio = out.raw_integral / out.normalizer;
    return out;
}

MomentEstimate transformed_moment(const ladder::LadderTable& table, double T, double U, int k,
                                  const argument::ArgumentFunction& arg, MomentKind kind,
                                  Weight weight) {
    check_window(T, U, k);
    if (kind != MomentKind::transformed_s && kind != MomentKind::transformed_s1) {
        throw PreconditionError("transformed_moment: kind must be a transformed kind");
    }
    const double x1 = table.phi(T);
    const double x2 = table.phi(T + U);
    if (!(x2 <= arg.cache().covered_hi())) {
        throw CoverageError("transformed_moment: zeros do not cover the image window [" +
                                format12(x1) + ", " + format12(x2) + "]",
                            x1, x2);
    }
    // Preimages of the zeros are where S(phi_1(t)) jumps and S1(phi_1(t)) kinks.
    std::vector<double> breaks{T};
    for (double g : zero_breaks(x1, x2, arg.cache())) {
        if (g <= x1 || g >= x2) continue;
        const double t = table.preimage(g);
        if (t > breaks.back() && t < T + U) breaks.push_back(t);
    }
    breaks.push_back(T + U);

    const bool use_s1 = kind == MomentKind::transformed_s1;
    const auto norm = table.normalization();
    const auto f = [&](double t) {
        const double x = table.phi(t);
        const double w = weight == Weight::z_tilde_sq ? ladder::z_tilde_sq(t, norm)
                                                      : std::pow(rs::z(t), 2);
        return power2k(use_s1 ? arg.s1(x) : arg.s(x), k) * w;
    };
    const auto rule = [](const auto& g, double x, double y) { return numeric::gauss20(g, x, y); };

    MomentEstimate out;
    out.kind = kind;
    out.weight = weight;
    out.T = T;
    out.U = U;
    out.k = k;
    out.raw_integral = static_cast<double>(piecewise(breaks, f, rule, 0.25));
    const double log_t = std::log(T);
    out.normalizer = use_s1 ? U : gaussian_moment_coefficient(k) * U * std::pow(std::log(log_t), k);
    if (weight == Weight::zeta_sq) out.normalizer *= log_t;
    out.ratio = out.raw_integral / out.normalizer;
    return out;
}

double empirical_c_k(const ladder::LadderTable& table, double T, double U, int k,
                     const argument::ArgumentFunction& arg) {
    return transformed_moment(table, T, U, k, arg, MomentKind::transformed_s1, Weight::zeta_sq)
        .ratio;
}

std::string kind_name(MomentKind kind, Weight weight) {
    switch (kind) {
        case MomentKind::s_moment:
            return "S-moment";
        case MomentKind::s1_moment:
            return "S1-moment";
        case MomentKind::transformed_s:
            return weight == Weight::zeta_sq ? "transformed-S:zeta_sq" : "transformed-S";
        case MomentKind::transformed_s1:
            return weight == Weight::zeta_sq ? "transformed-S1:zeta_sq" : "transformed-S1";
    }
    return "unknown";
}

void export_moments(const std::vector<MomentEstimate>& rows, std::ostream& out) {
    out << "kind,T,U,k,raw,normalizer,ratio\n";
    for (const auto& r : rows) {
        out << kind_name(r.kind, r.weight) << ',' << format12(r.T) << ',' << format12(r.U) << ','
            << r.k << ',' << format12(r.raw_integral) << ',' << format12(r.normalizer) << ','
            << format12(r.ratio) << '\n';
    }
}

}  // namespace zeta_ladder::moments
