#pragma once

#include <span>
#include <vector>

namespace gsplab {

/// Monotone piecewise-cubic Hermite interpolant (Fritsch-Carlson/Butland
/// slopes) of tabulated data in (log x, log f) coordinates.  A pure power law
/// is a straight line there and is reproduced exactly.
class LogLogInterpolant {
public:
    /// x strictly increasing and positive, f positive, at least two points.
    LogLogInterpolant(std::span<const double> x, std::span<const double> f);

    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }

    /// Interpolated f(x) for x in [x_min, x_max]; the caller checks the hull.
    double operator()(double x) const;

    /// d log f / d log x of the interpolant (knot slopes are shared, so C^1).
    double log_slope(double x) const;

    std::span<const double> abscissae() const { return x_; }
    std::span<const double> ordinates() const { return f_; }

private:
    std::size_t interval(double logx) const;

    std::vector<double> x_, f_;
    std::vector<double> lx_, lf_, slope_;
};

}  // namespace gsplab
