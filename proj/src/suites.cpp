#include "zeta_ladder/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>

#include "zeta_ladder/errors.hpp"
#include "zeta_ladder/meanpoint.hpp"
#include "zeta_ladder/moments.hpp"
#include "zeta_ladder/numeric.hpp"
#include "zeta_ladder/rs_core.hpp"

namespace zeta_ladder::suites {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

constexpr double kSubstitutionTolerance = 1e-8;
constexpr double kImageTolerance = 1e-6;
constexpr double kRatioLo = 0.95;
constexpr double kRatioHi = 1.05;
constexpr double kTanLo = 0.9;
constexpr double kTanHi = 1.1;
constexpr double kDefectLo = 0.8;
constexpr double kDefectHi = 1.2;
constexpr double kGapLo = 0.5;
constexpr double kGapHi = 2.0;
constexpr double kGapShare = 0.8;
constexpr double kSlopeSlack = 0.1;

std::string fmt(double x) { return report::format_number(x); }

std::string tag(double T, double U) { return " T=" + fmt(T) + " U=" + fmt(U); }

std::string tag(double T, double U, int k) { return tag(T, U) + " k=" + std::to_string(k); }

Check band(std::string name, double value, double lo, double hi) {
    return {std::move(name), value, "in [" + fmt(lo) + ", " + fmt(hi) + "]", true,
            value >= lo && value <= hi};
}

Check at_most(std::string name, double value, double bound) {
    return {std::move(name), value, "<= " + fmt(bound), true, value <= bound};
}

Check at_least(std::string name, double value, double bound) {
    return {std::move(name), value, ">= " + fmt(bound), true, value >= bound};
}

Check data(std::string name, double value) { return {std::move(name), value, "", false, true}; }

Check failure(std::string name, const std::exception& e) {
    return {std::move(name), kNaN, e.what(), true, false};
}

bool condition_a(const meanpoint::TauPoint& tp, const ladder::LadderTable& table) {
    return tp.T < tp.tau && tp.tau < tp.T + tp.U && table.phi(tp.T) < tp.phi1_tau &&
           tp.phi1_tau < table.phi(tp.T + tp.U);
}

std::vector<double> trend_heights(double T, int n) {
    std::vector<double> h(n);
    for (int i = 0; i < n; ++i) h[i] = T * std::pow(10.0, static_cast<double>(i) / (n - 1));
    return h;
}

struct Window {
    meanpoint::SpacingReport report;
    std::string status = "ok";
};

Window spacing_window(double T, double U, const pipeline::Pipeline& pipe) {
    Window w;
    try {
        const auto tp = meanpoint::find_tau(T, U, 1, pipe.ladder(), pipe.arg());
        const double c1 = moments::empirical_c_k(pipe.ladder(), T, U, 1, pipe.arg());
        w.report = meanpoint::spacing_report(tp, c1, pipe.arg());
    } catch (const std::exception& e) {
        w.status = e.what();
    }
    return w;
}

std::vector<Window> spacing_windows(double T, const RunConfig& config,
                                    const pipeline::Pipeline& pipe) {
    const double U = config.window(T);
    std::vector<Window> out(config.windows);
    numeric::parallel_for(out.size(), config.jobs, [&](std::size_t j) {
        out[j] = spacing_window(T + static_cast<double>(j) * U, U, pipe);
    });
    return out;
}

void verify_lemma1(double T, const RunConfig& config, const pipeline::Pipeline& pipe,
                   SuiteResult& result) {
    const double U = config.window(T);
    const std::vector<std::pair<std::string, std::function<double(double)>>> fs = {
        {"1", [](double) { return 1.0; }},
        {"x", [](double x) { return x; }},
        {"x^2", [](double x) { return x * x; }},
        {"sin", [](double x) { return std::sin(x); }},
    };
    for (const auto& [name, f] : fs) {
        const std::string label = "substitution f=" + name + tag(T, U);
        try {
            const auto s = ladder::substitution_check(pipe.ladder(), T, U, f);
            result.checks.push_back(at_most(label + " residual", s.residual, kSubstitutionTolerance));
        } catch (const std::exception& e) {
            result.checks.push_back(failure(label, e));
        }
    }
}

void verify_lemma2(double T, const RunConfig& config, const pipeline::Pipeline& pipe,
                   SuiteResult& result) {
    const double U = config.window(T);
    const auto& table = pipe.ladder();
    for (int k : config.k) {
        for (auto kind : {moments::MomentKind::transformed_s, moments::MomentKind::transformed_s1}) {
            const std::string label = moments::kind_name(kind, moments::Weight::z_tilde_sq) + tag(T, U, k);
            try {
                const auto m = moments::transformed_moment(table, T, U, k, pipe.arg(), kind,
                                                           moments::Weight::z_tilde_sq);
                const double plain =
                    moments::plain_integral(table.phi(T), table.phi(T + U), k,
                                            kind == moments::MomentKind::transformed_s1, pipe.arg());
                const double rel = std::abs(m.raw_integral - plain) / std::abs(plain);
                result.checks.push_back(at_most(label + " image-window deviation", rel, kImageTolerance));
                result.checks.push_back(data(label + " ratio", m.ratio));
                const auto z = moments::transformed_moment(table, T, U, k, pipe.arg(), kind,
                                                           moments::Weight::zeta_sq);
                result.checks.push_back(
                    data(moments::kind_name(kind, moments::Weight::zeta_sq) + tag(T, U, k) + " ratio",
                         z.ratio));
            } catch (const std::exception& e) {
                result.checks.push_back(failure(label, e));
            }
        }
    }
}

void verify_theorem(double T, const RunConfig& config, const pipeline::Pipeline& pipe,
                    SuiteResult& result) {
    const double U = config.window(T);
    for (int k : config.k) {
        const std::string label = tag(T, U, k);
        try {
            const auto tp = meanpoint::find_tau(T, U, k, pipe.ladder(), pipe.arg());
            const double ck = moments::empirical_c_k(pipe.ladder(), T, U, k, pipe.arg());
            const auto th = meanpoint::check_theorem(tp, ck, pipe.arg());
            const auto om = meanpoint::corollary_omega(tp, ck, pipe.arg());
            result.checks.push_back(data("tau" + label, tp.tau));
            result.checks.push_back(at_most("tau residual" + label, tp.residual(),
                                            meanpoint::kResidualTolerance));
            result.checks.push_back(
                {"ordering (A)" + label, tp.phi1_tau, "T < tau < T+U, phi1(T) < phi1(tau) < phi1(T+U)",
                 true, condition_a(tp, pipe.ladder())});
            result.checks.push_back(data("c_k" + label, ck));
            result.checks.push_back(band("theorem ratio" + label, th.ratio, kRatioLo, kRatioHi));
            result.checks.push_back(data("omega ratio" + label, om.ratio));
            result.checks.push_back(data("omega |zeta|^(1/k)" + label,
                                         om.lhs * std::pow(std::abs(rs::z(tp.tau)), 1.0 / k)));
        } catch (const std::exception& e) {
            result.checks.push_back(failure("theorem" + label, e));
        }
    }
}

void verify_conditions(double T, const RunConfig& config, const pipeline::Pipeline& pipe,
                       SuiteResult& result) {
    const double U = config.window(T);
    const std::string label = tag(T, U);
    try {
        const auto tp = meanpoint::find_tau(T, U, 1, pipe.ladder(), pipe.arg());
        const auto bc = meanpoint::check_conditions_BC(tp, pipe.ladder(), pipe.pi());
        result.checks.push_back(
            {"image below T" + label, bc.rho, "phi1(T+U) < T", true, bc.image_below_T});
        result.checks.push_back(band("tan alpha" + label, bc.tan_alpha, kTanLo, kTanHi));
        result.checks.push_back(data("rho ratio" + label, bc.rho_ratio));
        const double T1 = std::max(T / 10.0, 10.0);
        const double R = ladder::defect_increment_check(pipe.ladder(), T1, T, pipe.pi());
        result.checks.push_back(
            band("defect ratio over [" + fmt(T1) + ", " + fmt(T) + "]", R, kDefectLo, kDefectHi));
    } catch (const std::exception& e) {
        result.checks.push_back(failure("conditions" + label, e));
    }
}

void verify_spacing(double T, const RunConfig& config, const pipeline::Pipeline& pipe,
                    SuiteResult& result) {
    const double U = config.window(T);
    const auto windows = spacing_windows(T, config, pipe);
    double worst = 0.0;
    int ordered = 0;
    int in_band = 0;
    int failed = 0;
    for (const auto& w : windows) {
        if (w.status != "ok") {
            ++failed;
            continue;
        }
        const auto& r = w.report;
        worst = std::max({worst, r.residual_left, r.residual_right});
        if (r.ordered()) ++ordered;
        const double q = r.predicted_gap / r.actual_gap;
        if (q >= kGapLo && q <= kGapHi) ++in_band;
    }
    const auto n = static_cast<double>(windows.size());
    const std::string label = tag(T, U) + " windows=" + std::to_string(windows.size());
    result.checks.push_back(at_most("failed windows" + label, failed, 0.0));
    result.checks.push_back(at_most("max constructive residual" + label, worst,
                                    meanpoint::kResidualTolerance));
    result.checks.push_back(at_least("ordered share" + label, ordered / n, 1.0));
    result.checks.push_back(at_least("gap ratio in [0.5, 2] share" + label, in_band / n, kGapShare));

    if (config.trend_points <= 0) return;
    const auto heights = trend_heights(T, config.trend_points);
    std::vector<Window> points(heights.size());
    numeric::parallel_for(points.size(), config.jobs, [&](std::size_t i) {
        points[i] = spacing_window(heights[i], config.window(heights[i]), pipe);
    });
    std::vector<meanpoint::SpacingReport> reports;
    for (const auto& p : points) {
        if (p.status == "ok") reports.push_back(p.report);
    }
    const std::string trend = "omega trend slope over [" + fmt(heights.front()) + ", " +
                              fmt(heights.back()) + "]";
    try {
        const auto fit = meanpoint::lower_bound_trend(reports);
        result.checks.push_back(
            at_least(trend, fit.slope, meanpoint::kLowerBoundExponent - kSlopeSlack));
        result.checks.push_back(data("omega trend rms residual", fit.rms_residual));
    } catch (const std::exception& e) {
        result.checks.push_back(failure(trend, e));
    }
}

report::Record tau_row(double T, int k, const RunConfig& config, const pipeline::Pipeline& pipe) {
    const double U = config.window(T);
    double tau = kNaN, phi1 = kNaN, g = kNaN, M = kNaN, residual = kNaN, ck = kNaN;
    double ratio = kNaN, omega = kNaN, omega_ratio = kNaN, product = kNaN;
    double tan = kNaN, rho = kNaN;
    bool below = false;
    std::string status = "ok";
    try {
        const auto tp = meanpoint::find_tau(T, U, k, pipe.ladder(), pipe.arg());
        tau = tp.tau;
        phi1 = tp.phi1_tau;
        g = tp.integrand_at_tau;
        M = tp.window_average;
        residual = tp.residual();
        ck = moments::empirical_c_k(pipe.ladder(), T, U, k, pipe.arg());
        ratio = meanpoint::check_theorem(tp, ck, pipe.arg()).ratio;
        const auto om = meanpoint::corollary_omega(tp, ck, pipe.arg());
        omega = om.lhs;
        omega_ratio = om.ratio;
        product = om.lhs * std::pow(std::abs(rs::z(tp.tau)), 1.0 / k);
        const auto bc = meanpoint::check_conditions_BC(tp, pipe.ladder(), pipe.pi());
        tan = bc.tan_alpha;
        rho = bc.rho;
        below = bc.image_below_T;
    } catch (const std::exception& e) {
        status = e.what();
    }
    return {{"T", T},
            {"U", U},
            {"k", static_cast<long long>(k)},
            {"tau", tau},
            {"phi1_tau", phi1},
            {"integrand_at_tau", g},
            {"window_average", M},
            {"residual", residual},
            {"c_k", ck},
            {"theorem_ratio", ratio},
            {"omega_abs", omega},
            {"omega_ratio", omega_ratio},
            {"omega_zeta_product", product},
            {"tan_alpha", tan},
            {"rho", rho},
            {"image_below_T", below},
            {"status", status}};
}

report::Record moments_row(double T, int k, const RunConfig& config,
                           const pipeline::Pipeline& pipe) {
    using moments::MomentKind;
    using moments::Weight;
    const double U = config.window(T);
    struct Slot {
        const char* name;
        MomentKind kind;
        Weight weight;
        double raw = kNaN;
        double ratio = kNaN;
    };
    std::vector<Slot> slots = {
        {"S", MomentKind::s_moment, Weight::z_tilde_sq},
        {"S1", MomentKind::s1_moment, Weight::z_tilde_sq},
        {"transformed_S", MomentKind::transformed_s, Weight::z_tilde_sq},
        {"transformed_S1", MomentKind::transformed_s1, Weight::z_tilde_sq},
        {"transformed_S1_zeta", MomentKind::transformed_s1, Weight::zeta_sq},
    };
    std::string status = "ok";
    try {
        for (auto& s : slots) {
            moments::MomentEstimate m;
            if (s.kind == MomentKind::s_moment) {
                m = moments::s_moment(T, U, k, pipe.arg());
            } else if (s.kind == MomentKind::s1_moment) {
                m = moments::s1_moment(T, U, k, pipe.arg());
            } else {
                m = moments::transformed_moment(pipe.ladder(), T, U, k, pipe.arg(), s.kind, s.weight);
            }
            s.raw = m.raw_integral;
            s.ratio = m.ratio;
        }
    } catch (const std::exception& e) {
        status = e.what();
    }
    report::Record row = {{"T", T}, {"U", U}, {"k", static_cast<long long>(k)}};
    for (const auto& s : slots) {
        row.emplace_back(std::string(s.name) + "_raw", s.raw);
        row.emplace_back(std::string(s.name) + "_ratio", s.ratio);
    }
    row.emplace_back("status", status);
    return row;
}

report::Record spacing_row(double T, std::size_t j, double U, const Window& w) {
    const auto& r = w.report;
    const bool ok = w.status == "ok";
    const auto v = [&](double x) { return ok ? x : kNaN; };
    return {{"T", T},
            {"window", static_cast<long long>(j)},
            {"T_j", T + static_cast<double>(j) * U},
            {"U", U},
            {"gamma", v(r.gamma)},
            {"gamma_prime", v(r.gamma_prime)},
            {"tau1", v(r.tau1)},
            {"xi_left", v(r.xi_left)},
            {"xi_right", v(r.xi_right)},
            {"z_tau", v(r.z_tau)},
            {"z_prime_left", v(r.z_prime_left)},
            {"z_prime_right", v(r.z_prime_right)},
            {"residual_left", v(r.residual_left)},
            {"residual_right", v(r.residual_right)},
            {"omega", v(r.omega)},
            {"c1", v(r.c1)},
            {"predicted_gap", v(r.predicted_gap)},
            {"actual_gap", v(r.actual_gap)},
            {"gap_ratio", v(r.predicted_gap / r.actual_gap)},
            {"ordered", ok && r.ordered()},
            {"status", w.status}};
}

std::vector<double> sorted(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<int> sorted(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

void RunConfig::validate() const {
    if (T.empty()) throw PreconditionError("empty T list");
    for (double t : T) {
        if (!std::isfinite(t) || t <= 10.0) throw PreconditionError("every T must exceed 10");
    }
    if (k.empty()) throw PreconditionError("empty k list");
    for (int kk : k) {
        if (kk < 1) throw PreconditionError("every k must be >= 1");
    }
    if (!(U >= 0.0) || !std::isfinite(U)) throw PreconditionError("U must be positive");
    if (!(epsilon > 0.0 && epsilon < 0.5)) throw PreconditionError("epsilon must lie in (0, 1/2)");
    if (windows < 1) throw PreconditionError("windows must be >= 1");
    if (sieve_limit < 100) throw PreconditionError("sieve limit must be >= 100");
    if (!(ladder_tolerance > 0.0)) throw PreconditionError("tolerance must be positive");
}

double RunConfig::window(double t) const {
    return U > 0.0 ? U : meanpoint::default_window(t, epsilon);
}

Suite parse_suite(const std::string& name) {
    if (name == "lemma1") return Suite::lemma1;
    if (name == "lemma2") return Suite::lemma2;
    if (name == "theorem") return Suite::theorem;
    if (name == "spacing") return Suite::spacing;
    if (name == "conditions") return Suite::conditions;
    throw PreconditionError("unknown suite '" + name + "'");
}

Sweep parse_sweep(const std::string& name) {
    if (name == "moments") return Sweep::moments;
    if (name == "tau") return Sweep::tau;
    if (name == "spacing") return Sweep::spacing;
    throw PreconditionError("unknown sweep '" + name + "'");
}

double required_height(Suite suite, const RunConfig& config) {
    double h = 0.0;
    for (double T : config.T) {
        double top = T + config.window(T);
        if (suite == Suite::spacing) {
            top = T + (config.windows + 1) * config.window(T);
            if (config.trend_points > 0) top = std::max(top, 10.0 * T + config.window(10.0 * T));
        }
        h = std::max(h, top);
    }
    return std::ceil(h + 1.0);
}

double required_height(Sweep sweep, const RunConfig& config) {
    double h = 0.0;
    for (double T : config.T) {
        const int n = sweep == Sweep::spacing ? config.windows + 1 : 1;
        h = std::max(h, T + n * config.window(T));
    }
    return std::ceil(h + 1.0);
}

pipeline::Config pipeline_config(const RunConfig& config, double height) {
    pipeline::Config pc;
    pc.height = height;
    pc.sieve_limit = config.sieve_limit;
    pc.cache_dir = config.cache_dir;
    pc.jobs = config.jobs;
    pc.ladder_tolerance = config.ladder_tolerance;
    return pc;
}

bool SuiteResult::passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const Check& c) { return !c.hard || c.passed; });
}

SuiteResult verify(Suite suite, const RunConfig& config, const pipeline::Pipeline& pipe) {
    SuiteResult result;
    for (double T : sorted(config.T)) {
        switch (suite) {
            case Suite::lemma1: verify_lemma1(T, config, pipe, result); break;
            case Suite::lemma2: verify_lemma2(T, config, pipe, result); break;
            case Suite::theorem: verify_theorem(T, config, pipe, result); break;
            case Suite::spacing: verify_spacing(T, config, pipe, result); break;
            case Suite::conditions: verify_conditions(T, config, pipe, result); break;
        }
    }
    return result;
}

void print_checks(const SuiteResult& result, std::ostream& out) {
    for (const auto& c : result.checks) {
        out << (!c.hard ? "DATA" : c.passed ? "PASS" : "FAIL") << ' ' << c.name << " = "
            << fmt(c.value);
        if (!c.bound.empty()) out << " (" << c.bound << ')';
        out << '\n';
    }
}

std::vector<report::Record> sweep(Sweep what, const RunConfig& config,
                                  const pipeline::Pipeline& pipe) {
    const auto Ts = sorted(config.T);
    std::vector<report::Record> rows;
    if (what == Sweep::spacing) {
        for (double T : Ts) {
            const double U = config.window(T);
            const auto windows = spacing_windows(T, config, pipe);
            for (std::size_t j = 0; j < windows.size(); ++j) {
                rows.push_back(spacing_row(T, j, U, windows[j]));
            }
        }
        return rows;
    }
    const auto ks = sorted(config.k);
    std::vector<std::pair<double, int>> jobs;
    for (double T : Ts) {
        for (int k : ks) jobs.emplace_back(T, k);
    }
    rows.resize(jobs.size());
    numeric::parallel_for(jobs.size(), config.jobs, [&](std::size_t i) {
        const auto [T, k] = jobs[i];
        rows[i] = what == Sweep::tau ? tau_row(T, k, config, pipe) : moments_row(T, k, config, pipe);
    });
    return rows;
}

bool all_ok(const std::vector<report::Record>& rows) {
    for (const auto& row : rows) {
        for (const auto& [key, value] : row) {
            if (key == "status" && std::get<std::string>(value) != "ok") return false;
        }
    }
    return true;
}

}  // namespace zeta_ladder::suites
