#pragma once

// S(t) = arg zeta(1/2 + it) / pi and S1(T) = int_0^T S(t) dt.
//
// The argument is defined by continuous variation along 2 -> 2 + it ->
// 1/2 + it starting from arg zeta(2) = 0; at a zero ordinate the right
// limit is taken.  With the zeros known, the counting identity
//
//     N(t) = theta(t) / pi + 1 + S(t)
//
// gives S exactly, and integrating it piecewise gives S1 in closed form.
// The path construction itself is kept as an independent oracle.

#include <memory>
#include <vector>

#include "zeta_ladder/zero_scan.hpp"

namespace zeta_ladder::argument {

enum class BranchSource { counting_identity, path_tracking };

struct SPoint {
    double t = 0.0;
    double s = 0.0;
    BranchSource branch_source = BranchSource::counting_identity;
};

enum class S1Method { closed_form, direct_quadrature };

struct S1Value {
    double upper_limit = 0.0;
    double value = 0.0;
    S1Method method = S1Method::closed_form;
};

/// arg zeta(1/2 + it) by tracking the argument along 2 -> 2 + it -> 1/2 + it.
/// The horizontal leg is walked with step halving whenever the increment
/// exceeds pi/4; throws ExceptionalPointError when the step underflows.
double arg_zeta_path(double t);

/// S(t) from arg_zeta_path.
SPoint s_path_oracle(double t);

/// S(t) = N(t) - 1 - theta(t)/pi with N from the cache (right limit at zeros).
SPoint s_of_t(double t, const ZeroCache& cache);

/// Theta(T) = int_0^T theta(u) du.
long double theta_integral(long double T);

/// S1(T).  closed_form: sum n(gamma)(T - gamma) - T - Theta(T)/pi.
/// direct_quadrature: integrates s_of_t between consecutive zeros.
S1Value s1_of_T(double T, const ZeroCache& cache, S1Method method = S1Method::closed_form);

/// Mean of arg zeta(1/2 + it) over [0, L]: pi S1(L) / L.
double mean_omega(double L, const ZeroCache& cache);

/// Repeated evaluation of S and S1 against one cache.  Precomputes S1 at
/// every cached ordinate so that S1(t) costs a lookup plus one short
/// quadrature, and is smooth between zeros.
class ArgumentFunction {
public:
    explicit ArgumentFunction(std::shared_ptr<const ZeroCache> cache);

    const ZeroCache& cache() const noexcept { return *cache_; }
    std::shared_ptr<const ZeroCache> cache_ptr() const noexcept { return cache_; }

    double s(double t) const;
    double s1(double t) const;
    double s1_closed_form(double t) const;
    double mean_omega(double L) const;

    /// Throws CoverageError unless [0, hi] is covered.
    void require_coverage(double hi) const;

private:
    std::shared_ptr<const ZeroCache> cache_;
    std::vector<long double> s1_at_zero_;
};

}  // namespace zeta_ladder::argument
