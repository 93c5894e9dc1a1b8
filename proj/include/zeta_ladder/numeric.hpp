#pragma once

// Small numerical toolkit shared by the modules: bracketed root refinement,
// fixed Gauss-Legendre quadrature, and a deterministic parallel loop.

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

namespace zeta_ladder::numeric {

struct Root {
    double x = 0.0;
    double fx = 0.0;
};

/// Refines a root of f bracketed by [a, b] (f(a) f(b) <= 0) with TOMS 748
/// (bisection-safeguarded inverse interpolation).  Stops once |f| <= f_tol
/// or the bracket has shrunk to a few ulps; returns the better endpoint.
template <class F>
Root refine_root(F&& f, double a, double b, double fa, double fb, double f_tol = 0.0) {
    if (fa == 0.0) return {a, 0.0};
    if (fb == 0.0) return {b, 0.0};
    Root best = std::abs(fa) < std::abs(fb) ? Root{a, fa} : Root{b, fb};
    auto wrapped = [&](double x) {
        const double v = f(x);
        if (std::abs(v) < std::abs(best.fx)) best = {x, v};
        return std::abs(v) <= f_tol ? 0.0 : v;
    };
    auto tol = [](double lo, double hi) {
        const double scale = std::max({std::abs(lo), std::abs(hi), 1e-300});
        return std::abs(hi - lo) <= 8.0 * std::numeric_limits<double>::epsilon() * scale;
    };
    std::uintmax_t max_iter = 200;
    boost::math::tools::toms748_solve(wrapped, a, b, fa, fb, tol, max_iter);
    return best;
}

/// Fixed 20-point Gauss-Legendre rule on [a, b].
template <class F>
double gauss20(F&& f, double a, double b) {
    return boost::math::quadrature::gauss<double, 20>::integrate(f, a, b);
}

/// Fixed 10-point Gauss-Legendre rule on [a, b] in extended precision.
template <class F>
long double gauss10_extended(F&& f, long double a, long double b) {
    return boost::math::quadrature::gauss<long double, 10>::integrate(f, a, b);
}

/// Runs fn(i) for i in [0, count) on up to `jobs` threads (0 = hardware
/// concurrency).  Results must be written to per-index slots; the first
/// exception (lowest index) is rethrown after all workers finish.
inline void parallel_for(std::size_t count, unsigned jobs,
                         const std::function<void(std::size_t)>& fn) {
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(count, 1)));
    std::vector<std::exception_ptr> errors(count);
    if (jobs <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    } else {
        std::mutex mutex;
        std::size_t next = 0;
        auto worker = [&] {
            for (;;) {
                std::size_t i;
                {
                    std::lock_guard<std::mutex> lock(mutex);
                    if (next >= count) return;
                    i = next++;
                }
                try {
                    fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace zeta_ladder::numeric
