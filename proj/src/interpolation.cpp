#include "gsplab/interpolation.hpp"

#include <algorithm>
#include <cmath>

#include "gsplab/error.hpp"

namespace gsplab {

namespace {

// One-sided three-point end slope, limited to preserve monotonicity.
double end_slope(double h0, double h1, double d0, double d1) {
    double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (std::signbit(s) != std::signbit(d0)) {
        s = 0.0;
    } else if (std::signbit(d0) != std::signbit(d1) && std::abs(s) > std::abs(3.0 * d0)) {
        s = 3.0 * d0;
    }
    return s;
}

}  // namespace

LogLogInterpolant::LogLogInterpolant(std::span<const double> x, std::span<const double> f)
    : x_(x.begin(), x.end()), f_(f.begin(), f.end()) {
    if (x_.size() != f_.size()) {
        throw Error(ErrorCode::InvalidArgument, "abscissa and ordinate counts differ");
    }
    if (x_.size() < 2) {
        throw Error(ErrorCode::InvalidArgument, "need at least two samples");
    }
    const std::size_t n = x_.size();
    lx_.resize(n);
    lf_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(x_[i] > 0.0) || !(f_[i] > 0.0)) {
            throw Error(ErrorCode::NonPositiveValue, "samples must be positive");
        }
        if (i > 0 && !(x_[i] > x_[i - 1])) {
            throw Error(ErrorCode::InvalidArgument, "abscissae must be strictly increasing");
        }
        lx_[i] = std::log(x_[i]);
        lf_[i] = std::log(f_[i]);
    }

    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = lx_[i + 1] - lx_[i];
        delta[i] = (lf_[i + 1] - lf_[i]) / h[i];
    }

    slope_.assign(n, 0.0);
    if (n == 2) {
        slope_[0] = slope_[1] = delta[0];
        return;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double d0 = delta[i - 1];
        const double d1 = delta[i];
        if (d0 == 0.0 || d1 == 0.0 || std::signbit(d0) != std::signbit(d1)) {
            slope_[i] = 0.0;
            continue;
        }
        // weighted harmonic mean
        const double w1 = 2.0 * h[i] + h[i - 1];
        const double w2 = h[i] + 2.0 * h[i - 1];
        slope_[i] = (w1 + w2) / (w1 / d0 + w2 / d1);
    }
    slope_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
    slope_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
}

std::size_t LogLogInterpolant::interval(double logx) const {
    auto it = std::upper_bound(lx_.begin(), lx_.end(), logx);
    std::size_t k = it == lx_.begin() ? 0 : static_cast<std::size_t>(it - lx_.begin()) - 1;
    return std::min(k, lx_.size() - 2);
}

double LogLogInterpolant::operator()(double x) const {
    if (x == x_.front()) return f_.front();
    if (x == x_.back()) return f_.back();
    const double t = std::log(x);
    const std::size_t k = interval(t);
    const double h = lx_[k + 1] - lx_[k];
    const double u = (t - lx_[k]) / h;
    const double u2 = u * u;
    const double u3 = u2 * u;
    const double h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
    const double h10 = u3 - 2.0 * u2 + u;
    const double h01 = -2.0 * u3 + 3.0 * u2;
    const double h11 = u3 - u2;
    const double lf = h00 * lf_[k] + h10 * h * slope_[k] + h01 * lf_[k + 1] + h11 * h * slope_[k + 1];
    return std::exp(lf);
}

double LogLogInterpolant::log_slope(double x) const {
    const double t = std::log(x);
    const std::size_t k = interval(t);
    const double h = lx_[k + 1] - lx_[k];
    const double u = (t - lx_[k]) / h;
    const double u2 = u * u;
    const double d00 = (6.0 * u2 - 6.0 * u) / h;
    const double d10 = 3.0 * u2 - 4.0 * u + 1.0;
    const double d01 = (-6.0 * u2 + 6.0 * u) / h;
    const double d11 = 3.0 * u2 - 2.0 * u;
    return d00 * lf_[k] + d10 * slope_[k] + d01 * lf_[k + 1] + d11 * slope_[k + 1];
}

}  // namespace gsplab
