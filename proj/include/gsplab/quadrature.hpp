#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

#include "gsplab/error.hpp"

namespace gsplab {

struct QuadOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    std::size_t max_panels = 10000;

    /// Same value used as absolute and relative tolerance.
    static QuadOptions with_tol(double tol) { return {tol, tol, 10000}; }
};

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t subdivisions = 0;
    /// False when the panel budget ran out before the target was met;
    /// value/error_estimate are then the best available.
    bool converged = true;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod pair (nodes symmetric about 0).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double lo, hi, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

// Open rule: the endpoints lo and hi are never sampled.
template <class Fn>
Panel gk15(Fn& fn, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = fn(center);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::abs(resk);
    std::array<double, 7> f1{}, f2{};
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        f1[j] = fn(center - dx);
        f2[j] = fn(center + dx);
        const double sum = f1[j] + f2[j];
        resk += kWgk[j] * sum;
        resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) resg += kWg[j / 2] * sum;
    }
    const double mean = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

    const double ah = std::abs(half);
    resk *= half;
    resg *= half;
    resabs *= ah;
    resasc *= ah;

    // QUADPACK error scaling with a roundoff floor.
    double err = std::abs(resk - resg);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
    return {lo, hi, resk, err};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod integration of fn over (lo, hi).
///
/// Stops when the summed error estimate is below
/// max(abs_tol, rel_tol * |value|) or the panel budget is spent.  Endpoints
/// are never evaluated, so integrable endpoint singularities at lo (such as
/// f'(u) ~ u^(p-1) with p < 1) need no special treatment.  Deterministic.
template <class Fn>
QuadResult integrate(Fn&& fn, double lo, double hi, const QuadOptions& opt) {
    if (!(lo < hi)) {
        throw Error(ErrorCode::InvalidArgument, "integrate requires lo < hi");
    }
    std::priority_queue<detail::Panel> open;
    std::vector<detail::Panel> frozen;  // too narrow to split further
    open.push(detail::gk15(fn, lo, hi));
    double value = open.top().value;
    double error = open.top().error;
    std::size_t panels = 1;

    auto target = [&](double v) { return std::max(opt.abs_tol, opt.rel_tol * std::abs(v)); };

    while (error > target(value) && !open.empty() && panels < opt.max_panels) {
        const detail::Panel worst = open.top();
        open.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) {
            frozen.push_back(worst);
            continue;
        }
        const detail::Panel left = detail::gk15(fn, worst.lo, mid);
        const detail::Panel right = detail::gk15(fn, mid, worst.hi);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        open.push(left);
        open.push(right);
        ++panels;
        // Guard against drift of the running sums.
        if (panels % 64 == 0) {
            double v = 0.0, e = 0.0;
            auto copy = open;
            while (!copy.empty()) {
                v += copy.top().value;
                e += copy.top().error;
                copy.pop();
            }
            for (const auto& p : frozen) {
                v += p.value;
                e += p.error;
            }
            value = v;
            error = e;
        }
    }

    // Final exact re-summation, small values first.
    std::vector<detail::Panel> all = std::move(frozen);
    while (!open.empty()) {
        all.push_back(open.top());
        open.pop();
    }
    std::sort(all.begin(), all.end(),
              [](const auto& a, const auto& b) { return std::abs(a.value) < std::abs(b.value); });
    double v = 0.0, e = 0.0;
    for (const auto& p : all) {
        v += p.value;
        e += p.error;
    }
    return {v, e, panels, e <= target(v)};
}

template <class Fn>
QuadResult integrate(Fn&& fn, double lo, double hi, double tol) {
    return integrate(std::forward<Fn>(fn), lo, hi, QuadOptions::with_tol(tol));
}

}  // namespace gsplab
