#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "gsplab/error.hpp"

namespace gsplab {

struct RootResult {
    double x = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Bracketed root of fn on [lo, hi] given fn(lo) and fn(hi) of opposite sign
/// (or zero).  A few bisection steps shrink the bracket, then Illinois-style
/// secant steps polish, with bisection whenever a secant step stalls.  Stops
/// at |fn| <= ftol or bracket width <= xtol.
template <class Fn>
RootResult solve_bracketed(Fn&& fn, double lo, double hi, double flo, double fhi, double xtol, double ftol,
                           int bisections = 0, int max_iter = 200) {
    if (flo == 0.0) return {lo, 0, true};
    if (fhi == 0.0) return {hi, 0, true};
    if (std::signbit(flo) == std::signbit(fhi)) {
        throw Error(ErrorCode::InvalidArgument, "root is not bracketed");
    }
    int it = 0;
    for (; it < bisections && hi - lo > xtol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = fn(mid);
        if (fm == 0.0) return {mid, it + 1, true};
        if (std::signbit(fm) == std::signbit(flo)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    int side = 0;  // which end was retained last (Illinois weighting)
    for (; it < max_iter; ++it) {
        if (hi - lo <= xtol) return {0.5 * (lo + hi), it, true};
        double x = hi - fhi * (hi - lo) / (fhi - flo);
        if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
        const double fx = fn(x);
        if (std::abs(fx) <= ftol) return {x, it + 1, true};
        if (std::signbit(fx) == std::signbit(flo)) {
            lo = x;
            flo = fx;
            if (side == -1) fhi *= 0.5;
            side = -1;
        } else {
            hi = x;
            fhi = fx;
            if (side == 1) flo *= 0.5;
            side = 1;
        }
    }
    return {0.5 * (lo + hi), it, false};
}

/// Every sign change of fn over grid_n equally spaced points on [lo, hi],
/// each refined by bisection to xtol.  Grid points where fn is exactly zero
/// count once.  Tangential roots without a sign change are not reported.
template <class Fn>
std::vector<double> find_all_roots(Fn&& fn, double lo, double hi, std::size_t grid_n, double xtol) {
    if (grid_n < 2) throw Error(ErrorCode::InvalidArgument, "grid_n must be >= 2");
    std::vector<double> roots;
    auto at = [&](std::size_t i) { return i + 1 == grid_n ? hi : lo + (hi - lo) * double(i) / double(grid_n - 1); };
    double x0 = at(0);
    double f0 = fn(x0);
    if (f0 == 0.0) roots.push_back(x0);
    for (std::size_t i = 1; i < grid_n; ++i) {
        const double x1 = at(i);
        const double f1 = fn(x1);
        if (f1 == 0.0) {
            roots.push_back(x1);
        } else if (f0 != 0.0 && std::signbit(f0) != std::signbit(f1)) {
            double a = x0, b = x1, fa = f0;
            while (b - a > xtol) {
                const double m = 0.5 * (a + b);
                if (m <= a || m >= b) break;
                const double fm = fn(m);
                if (fm == 0.0) {
                    a = b = m;
                    break;
                }
                if (std::signbit(fm) == std::signbit(fa)) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        x0 = x1;
        f0 = f1;
    }
    return roots;
}

}  // namespace gsplab
