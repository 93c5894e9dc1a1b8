#pragma once

// Zeros of Z(t) on an interval: sign-change scan, refinement, audit of the
// count against the Riemann-von Mangoldt identity, order detection and a
// persisted cache.

#include <cstddef>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace zeta_ladder {

struct ZeroRecord {
    double gamma = 0.0;
    int order = 1;
    double z_prime_abs = 0.0;
    // Ordinal among all zeros with positive ordinate (first zero = 1).
    long index = 0;
    // Set when the order is a best-effort estimate rather than certified.
    bool order_flagged = false;
};

struct ScanOptions {
    // Grid step as a fraction of the mean gap 2 pi / log(t / 2 pi); at most 0.5.
    double grid_factor = 0.25;
    // Refined zeros satisfy |Z(gamma)| <= z_tolerance.
    double z_tolerance = 1e-9;
    int max_refinements = 3;
    // Worker threads for the scan; 0 = hardware concurrency.
    unsigned jobs = 0;
};

class ZeroCache {
public:
    ZeroCache() = default;
    /// count_below < 0 derives it from the first record's index.
    ZeroCache(std::vector<ZeroRecord> records, double lo, double hi, std::string checksum,
              long count_below = -1);

    const std::vector<ZeroRecord>& records() const noexcept { return records_; }
    std::size_t size() const noexcept { return records_.size(); }
    bool empty() const noexcept { return records_.empty(); }
    double covered_lo() const noexcept { return lo_; }
    double covered_hi() const noexcept { return hi_; }
    const std::string& checksum() const noexcept { return checksum_; }

    /// Zeros with ordinate below covered_lo(), counted with multiplicity.
    long count_below() const noexcept { return count_below_; }

    /// Number of records with gamma <= t.
    std::size_t records_up_to(double t) const;

    /// N(t): zeros in (0, t] counted with multiplicity; t must lie in the
    /// covered interval.
    long counting(double t) const;

    /// sum of n(gamma) * gamma over records with gamma <= t (extended
    /// precision prefix sums).
    long double weighted_gamma_sum(double t) const;

    /// Distance from t to the nearest cached ordinate (infinity if empty).
    double distance_to_zero(double t) const;

private:
    std::vector<ZeroRecord> records_;
    std::vector<long> prefix_order_;        // size + 1
    std::vector<long double> prefix_gamma_;  // size + 1
    double lo_ = 0.0;
    double hi_ = 0.0;
    long count_below_ = 0;
    std::string checksum_;
};

/// N(t) = theta(t)/pi + 1 + S(t) with S(t) from continuous argument
/// tracking; the value must be within 0.25 of an integer.
long counting_identity(double t);

/// Locates all zeros of Z in [a, b] (10 <= a < b).  Throws ScanAuditError
/// when the count disagrees with the counting identity after
/// options.max_refinements grid refinements.
ZeroCache scan_zeros(double a, double b, const ScanOptions& options = {});

/// The consecutive pair (gamma, gamma') with gamma < tau < gamma'.
std::pair<ZeroRecord, ZeroRecord> bracket(double tau, const ZeroCache& cache);

struct OrderEstimate {
    int order = 1;
    bool flagged = false;
    // Z'(gamma) as estimated during detection.
    double z_prime = 0.0;
};

/// Order of a refined zero: 1 when Z changes sign and |Z'| exceeds ten
/// times its error estimate, otherwise a flagged estimate from successive
/// derivative magnitudes.  Throws OrderUndeterminedError when the record
/// is not a zero or all derivatives are below noise.
OrderEstimate detect_order(const ZeroRecord& record, double z_tolerance = 1e-9);

/// Cache file name: embeds [a, b], the grid parameters and their hash.
std::string cache_file_name(double a, double b, const ScanOptions& options);

/// Writes `index,gamma,order,z_prime_abs` rows (12 significant digits).
void save_cache(const ZeroCache& cache, const std::filesystem::path& file);

/// Reads a cache file and re-polishes each ordinate to full precision.
ZeroCache load_cache(const std::filesystem::path& file, double a, double b,
                     const ScanOptions& options = {});

/// Loads [a, b] from `dir` when a matching file exists, otherwise scans and
/// writes it; either way the result is the cache as read from the file.
/// An empty dir disables persistence.
ZeroCache load_or_scan(double a, double b, const ScanOptions& options,
                       const std::filesystem::path& dir);

}  // namespace zeta_ladder
