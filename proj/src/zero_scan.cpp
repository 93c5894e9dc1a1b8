#include "zeta_ladder/zero_scan.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "zeta_ladder/argument.hpp"
#include "zeta_ladder/errors.hpp"
#include "zeta_ladder/numeric.hpp"
#include "zeta_ladder/rs_core.hpp"

namespace zeta_ladder {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// No zero of Z lies below this height.
constexpr double kZeroFreeBelow = 14.0;
constexpr std::size_t kChunkPoints = 64;
constexpr int kCacheFormatVersion = 1;

double mean_gap(double t) { return kTwoPi / std::log(std::max(t, 8.0 * kTwoPi) / kTwoPi); }

double grid_step(double t, double factor) { return std::min(factor * mean_gap(t), 1.0); }

std::string format12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string parameter_checksum(double a, double b, const ScanOptions& o) {
    std::ostringstream s;
    s << "v" << kCacheFormatVersion << ';' << format12(a) << ';' << format12(b) << ';'
      << format12(o.grid_factor) << ';' << format12(o.z_tolerance) << ';' << o.max_refinements;
    return fnv1a_hex(s.str());
}

// Point of large |Z| in [lo, hi]; keeps the counting identity away from zeros.
double audit_point(double lo, double hi) {
    constexpr int kSamples = 17;
    double best_t = 0.5 * (lo + hi);
    double best_z = -1.0;
    for (int i = 0; i < kSamples; ++i) {
        const double t = lo + (hi - lo) * i / (kSamples - 1);
        const double z = std::abs(rs::z(t));
        if (z > best_z) {
            best_z = z;
            best_t = t;
        }
    }
    return best_t;
}

long count_at(double t) { return t < kZeroFreeBelow ? 0 : counting_identity(t); }

std::vector<double> scan_grid(double lo, double hi, double factor) {
    std::vector<double> xs;
    double x = lo;
    for (;;) {
        xs.push_back(x);
        if (x >= hi) break;
        x = std::min(hi, x + grid_step(x, factor));
    }
    return xs;
}

// Zeros of Z attributed to grid points [begin, end), refined to |Z| <= tol.
// Besides sign changes between neighbours, every dip of |Z| inside a run of
// equal signs is minimized, which recovers close pairs the grid stepped over.
std::vector<double> scan_points(const std::vector<double>& xs, std::size_t begin, std::size_t end,
                                double tol) {
    const std::size_t first = begin > 0 ? begin - 1 : 0;
    const std::size_t last = std::min(end + 1, xs.size());
    std::vector<double> zs(last - first);
    for (std::size_t j = first; j < last; ++j) zs[j - first] = rs::z(xs[j]);
    auto x = [&](std::size_t i) { return xs[i]; };
    auto z = [&](std::size_t i) { return zs[i - first]; };

    std::vector<double> roots;
    for (std::size_t i = begin; i < end && i + 1 < xs.size(); ++i) {
        if (std::signbit(z(i)) != std::signbit(z(i + 1))) {
            roots.push_back(numeric::refine_root(rs::z, x(i), x(i + 1), z(i), z(i + 1), tol).x);
            continue;
        }
        if (i == 0) continue;
        const bool run = std::signbit(z(i - 1)) == std::signbit(z(i));
        const bool dip = std::abs(z(i)) <= std::abs(z(i - 1)) && std::abs(z(i)) <= std::abs(z(i + 1));
        if (!run || !dip) continue;
        const double sign = std::signbit(z(i)) ? -1.0 : 1.0;
        auto signed_z = [sign](double v) { return sign * rs::z(v); };
        const auto [xm, fm] = boost::math::tools::brent_find_minima(signed_z, x(i - 1), x(i + 1), 40);
        if (fm >= 0.0) continue;
        const double zm = sign * fm;
        roots.push_back(numeric::refine_root(rs::z, x(i - 1), xm, z(i - 1), zm, tol).x);
        roots.push_back(numeric::refine_root(rs::z, xm, x(i + 1), zm, z(i + 1), tol).x);
    }
    return roots;
}

std::vector<double> scan_parallel(double lo, double hi, double factor, double tol, unsigned jobs) {
    const auto xs = scan_grid(lo, hi, factor);
    const std::size_t chunks = (xs.size() + kChunkPoints - 1) / kChunkPoints;
    std::vector<std::vector<double>> parts(chunks);
    numeric::parallel_for(parts.size(), jobs, [&](std::size_t i) {
        const std::size_t begin = i * kChunkPoints;
        parts[i] = scan_points(xs, begin, std::min(xs.size(), begin + kChunkPoints), tol);
    });
    std::vector<double> out;
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    std::sort(out.begin(), out.end());
    return out;
}

long found_in(const std::vector<double>& roots, double lo, double hi) {
    const auto first = std::upper_bound(roots.begin(), roots.end(), lo);
    const auto last = std::upper_bound(roots.begin(), roots.end(), hi);
    return static_cast<long>(last - first);
}

struct Audit {
    double t;
    long n;
};

// Repairs (l.t, r.t] so that its root count matches r.n - l.n; recursion
// narrows the mismatch, the leaf is rescanned on finer grids.
void repair(std::vector<double>& roots, Audit l, Audit r, const ScanOptions& o, int depth) {
    const long expected = r.n - l.n;
    if (found_in(roots, l.t, r.t) == expected) return;
    const double width = r.t - l.t;
    const double gap = mean_gap(0.5 * (l.t + r.t));
    if (width > 8.0 * gap && depth < 40) {
        const double mid = 0.5 * (l.t + r.t);
        const double mt = audit_point(mid - 0.25 * gap, mid + 0.25 * gap);
        const Audit m{mt, count_at(mt)};
        repair(roots, l, m, o, depth + 1);
        repair(roots, m, r, o, depth + 1);
        return;
    }
    double factor = o.grid_factor;
    for (int attempt = 0; attempt < o.max_refinements; ++attempt) {
        factor *= 0.25;
        const auto xs = scan_grid(l.t, r.t, factor);
        auto fresh = scan_points(xs, 0, xs.size(), o.z_tolerance);
        std::sort(fresh.begin(), fresh.end());
        if (static_cast<long>(fresh.size()) == expected) {
            const auto first = std::upper_bound(roots.begin(), roots.end(), l.t);
            const auto last = std::upper_bound(roots.begin(), roots.end(), r.t);
            const auto pos = roots.erase(first, last);
            roots.insert(pos, fresh.begin(), fresh.end());
            return;
        }
    }
    throw ScanAuditError("zero scan: possible close pair or multiple zero in [" + format12(l.t) +
                             ", " + format12(r.t) + "]",
                         l.t, r.t, expected, found_in(roots, l.t, r.t));
}

}  // namespace

ZeroCache::ZeroCache(std::vector<ZeroRecord> records, double lo, double hi, std::string checksum,
                     long count_below)
    : records_(std::move(records)), lo_(lo), hi_(hi), checksum_(std::move(checksum)) {
    prefix_order_.assign(records_.size() + 1, 0);
    prefix_gamma_.assign(records_.size() + 1, 0.0L);
    for (std::size_t i = 0; i < records_.size(); ++i) {
        prefix_order_[i + 1] = prefix_order_[i] + records_[i].order;
        prefix_gamma_[i + 1] = prefix_gamma_[i] + static_cast<long double>(records_[i].order) *
                                                      static_cast<long double>(records_[i].gamma);
    }
    if (count_below >= 0) {
        count_below_ = count_below;
    } else {
        count_below_ = records_.empty() ? 0 : records_.front().index - 1;
    }
}

std::size_t ZeroCache::records_up_to(double t) const {
    const auto it = std::upper_bound(records_.begin(), records_.end(), t,
                                     [](double v, const ZeroRecord& r) { return v < r.gamma; });
    return static_cast<std::size_t>(it - records_.begin());
}

long ZeroCache::counting(double t) const {
    const bool below_ok = t < lo_ && t < kZeroFreeBelow && count_below_ == 0;
    if (!(t >= lo_ || below_ok) || t > hi_) {
        throw CoverageError("zero cache does not cover t = " + format12(t), lo_, hi_);
    }
    return count_below_ + prefix_order_[records_up_to(t)];
}

long double ZeroCache::weighted_gamma_sum(double t) const { return prefix_gamma_[records_up_to(t)]; }

double ZeroCache::distance_to_zero(double t) const {
    if (records_.empty()) return std::numeric_limits<double>::infinity();
    const std::size_t i = records_up_to(t);
    double d = std::numeric_limits<double>::infinity();
    if (i < records_.size()) d = records_[i].gamma - t;
    if (i > 0) d = std::min(d, t - records_[i - 1].gamma);
    return d;
}

long counting_identity(double t) {
    const double value = rs::theta(t) / std::numbers::pi + 1.0 +
                         argument::arg_zeta_path(t) / std::numbers::pi;
    const double n = std::round(value);
    if (std::abs(value - n) > 0.25) {
        throw ExceptionalPointError("counting identity not near an integer", t);
    }
    return static_cast<long>(n);
}

OrderEstimate detect_order(const ZeroRecord& record, double z_tolerance) {
    const double g = record.gamma;
    if (!std::isfinite(g) || g <= 0.0) throw DomainError("detect_order: invalid ordinate");
    const double z0 = rs::z(g);
    if (std::abs(z0) > 10.0 * std::max(z_tolerance, 1e-12)) {
        throw OrderUndeterminedError("detect_order: Z does not vanish at t = " + format12(g));
    }
    const auto d = rs::z_derivative(g);
    const double delta = 1e-4 * mean_gap(g);
    const bool sign_change = std::signbit(rs::z(g - delta)) != std::signbit(rs::z(g + delta));
    if (sign_change && std::abs(d.value) > 10.0 * d.error_estimate) return {1, false, d.value};

    // Finite-difference derivatives of increasing order; the first one clearly
    // above its noise level decides.
    const double h = 0.05 * mean_gap(g);
    const double noise = 1e-12 * std::sqrt(g);
    double binom_row[6] = {1, 0, 0, 0, 0, 0};
    for (int m = 1; m <= 4; ++m) {
        for (int j = m; j > 0; --j) binom_row[j] += binom_row[j - 1];
        double acc = 0.0;
        for (int j = 0; j <= m; ++j) {
            const double sgn = ((m - j) % 2 == 0) ? 1.0 : -1.0;
            acc += sgn * binom_row[j] * rs::z(g + (j - 0.5 * m) * h);
        }
        const double deriv = acc / std::pow(h, m);
        const double deriv_noise = noise * std::pow(2.0, m) / std::pow(h, m);
        if (std::abs(deriv) > 10.0 * deriv_noise) return {m, true, d.value};
    }
    throw OrderUndeterminedError("detect_order: all derivative estimates below noise at t = " +
                                 format12(g));
}

ZeroCache scan_zeros(double a, double b, const ScanOptions& options) {
    if (!std::isfinite(a) || !std::isfinite(b) || a < 10.0 || !(a < b)) {
        throw PreconditionError("scan_zeros: require 10 <= a < b");
    }
    if (!(options.grid_factor > 0.0 && options.grid_factor <= 0.5) || options.z_tolerance <= 0.0 ||
        options.max_refinements < 0) {
        throw PreconditionError("scan_zeros: invalid scan options");
    }
    const std::string checksum = parameter_checksum(a, b, options);
    if (b < kZeroFreeBelow) return ZeroCache({}, a, b, checksum);

    const double lo_gap = mean_gap(a);
    const double hi_gap = mean_gap(b);
    const Audit lo = [&] {
        if (a < kZeroFreeBelow) return Audit{a, 0};
        const double t = audit_point(std::max(10.0, a - 0.5 * lo_gap), a);
        return Audit{t, count_at(t)};
    }();
    const double hi_t = audit_point(b, b + 0.5 * hi_gap);
    const Audit hi{hi_t, count_at(hi_t)};

    auto roots = scan_parallel(lo.t, hi.t, options.grid_factor, options.z_tolerance, options.jobs);
    repair(roots, lo, hi, options, 0);

    std::vector<double> kept;
    long below_a = lo.n;
    for (double g : roots) {
        if (g < a) {
            ++below_a;
        } else if (g <= b) {
            kept.push_back(g);
        }
    }
    std::vector<ZeroRecord> records(kept.size());
    numeric::parallel_for(kept.size(), options.jobs, [&](std::size_t i) {
        ZeroRecord& r = records[i];
        r.gamma = kept[i];
        const auto order = detect_order(r, options.z_tolerance);
        r.order = order.order;
        r.order_flagged = order.flagged;
        r.z_prime_abs = order.order == 1 ? std::abs(order.z_prime) : 0.0;
    });
    long index = below_a + 1;
    for (auto& r : records) {
        r.index = index;
        index += r.order;
    }
    for (std::size_t i = 1; i < records.size(); ++i) {
        if (!(records[i].gamma > records[i - 1].gamma)) {
            throw ScanAuditError("zero scan: duplicate ordinate at " + format12(records[i].gamma),
                                 records[i - 1].gamma,
                                 records[i].gamma, 0, 0);
        }
    }
    return ZeroCache(std::move(records), a, b, checksum, below_a);
}

std::pair<ZeroRecord, ZeroRecord> bracket(double tau, const ZeroCache& cache) {
    if (!std::isfinite(tau) || !(tau > cache.covered_lo() && tau < cache.covered_hi())) {
        throw CoverageError("bracket: tau outside the covered interval", cache.covered_lo(),
                            cache.covered_hi());
    }
    if (cache.distance_to_zero(tau) <= 1e-9 * std::max(1.0, tau)) {
        throw ExceptionalPointError("bracket: tau is a zero ordinate", tau);
    }
    const std::size_t i = cache.records_up_to(tau);
    if (i == 0 || i >= cache.size()) {
        throw CoverageError("bracket: no zero on one side of tau within the cache",
                            cache.covered_lo(), cache.covered_hi());
    }
    return {cache.records()[i - 1], cache.records()[i]};
}

std::string cache_file_name(double a, double b, const ScanOptions& options) {
    return "zeros_" + format12(a) + "_" + format12(b) + "_g" + format12(options.grid_factor) +
           "_" + parameter_checksum(a, b, options) + ".csv";
}

void save_cache(const ZeroCache& cache, const std::filesystem::path& file) {
    const auto tmp = file.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw ConfigurationError("cannot write zero cache " + tmp);
        out << "index,gamma,order,z_prime_abs\n";
        for (const auto& r : cache.records()) {
            out << r.index << ',' << format12(r.gamma) << ',' << r.order << ','
                << format12(r.z_prime_abs) << '\n';
        }
        if (!out) throw ConfigurationError("cannot write zero cache " + tmp);
    }
    std::filesystem::rename(tmp, file);
}

ZeroCache load_cache(const std::filesystem::path& file, double a, double b,
                     const ScanOptions& options) {
    std::ifstream in(file);
    if (!in) throw ConfigurationError("cannot read zero cache " + file.string());
    std::string line;
    if (!std::getline(in, line) || line != "index,gamma,order,z_prime_abs") {
        throw ConfigurationError("zero cache has an unexpected header: " + file.string());
    }
    std::vector<ZeroRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ZeroRecord r;
        char c1 = 0, c2 = 0, c3 = 0;
        std::istringstream row(line);
        if (!(row >> r.index >> c1 >> r.gamma >> c2 >> r.order >> c3 >> r.z_prime_abs) ||
            c1 != ',' || c2 != ',' || c3 != ',' || r.order < 1) {
            throw ConfigurationError("malformed zero cache row: " + line);
        }
        records.push_back(r);
    }
    numeric::parallel_for(records.size(), options.jobs, [&](std::size_t i) {
        ZeroRecord& r = records[i];
        const double w = 2e-11 * r.gamma + 1e-12;
        double lo = r.gamma - w;
        double hi = r.gamma + w;
        double zl = rs::z(lo);
        double zh = rs::z(hi);
        for (int widen = 0; widen < 4 && std::signbit(zl) == std::signbit(zh); ++widen) {
            lo -= 10.0 * w;
            hi += 10.0 * w;
            zl = rs::z(lo);
            zh = rs::z(hi);
        }
        if (std::signbit(zl) == std::signbit(zh)) {
            if (r.order % 2 == 0) return;
            throw ConfigurationError("zero cache entry does not bracket a zero: " +
                                     format12(r.gamma));
        }
        r.gamma = numeric::refine_root(rs::z, lo, hi, zl, zh, options.z_tolerance).x;
    });
    return ZeroCache(std::move(records), a, b, parameter_checksum(a, b, options));
}

ZeroCache load_or_scan(double a, double b, const ScanOptions& options,
                       const std::filesystem::path& dir) {
    if (dir.empty()) return scan_zeros(a, b, options);
    const auto file = dir / cache_file_name(a, b, options);
    if (std::filesystem::exists(file)) {
        try {
            auto cache = load_cache(file, a, b, options);
            if (!cache.empty()) return cache;
        } catch (const ConfigurationError&) {
            // Stale or damaged file: regenerate below.
        }
    }
    auto cache = scan_zeros(a, b, options);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ConfigurationError("cannot create cache directory " + dir.string());
    save_cache(cache, file);
    // Read back so a fresh scan and a later cached run see identical ordinates.
    if (cache.empty()) return cache;
    return load_cache(file, a, b, options);
}

}  // namespace zeta_ladder
