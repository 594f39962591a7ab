#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gsplab/function_model.hpp"
#include "gsplab/moments.hpp"

namespace gsplab {

enum class Spacing { Log, Linear };

std::string to_string(Spacing s);

/// Ordered truncation scales standing in for "every a > 0".
class ScaleGrid {
public:
    static constexpr std::size_t kMinCount = 5;

    /// Throws InvalidArgument unless 0 < min < max and count >= 5.
    static ScaleGrid make(double min, double max, std::size_t count, Spacing spacing = Spacing::Log);

    /// 17 log-spaced scales over [0.1, 10], clipped to the spec's hull.
    static ScaleGrid default_for(const FunctionSpec& spec);

    /// Same count and spacing over the part of [min, max] that a tabulated
    /// spec supports: (100 * x_min, x_max].  Identity for analytic specs.
    ScaleGrid clipped_to(const FunctionSpec& spec) const;

    const std::vector<double>& scales() const { return scales_; }
    std::size_t count() const { return scales_.size(); }
    double min() const { return scales_.front(); }
    double max() const { return scales_.back(); }
    Spacing spacing() const { return spacing_; }

private:
    ScaleGrid(std::vector<double> s, Spacing spacing) : scales_(std::move(s)), spacing_(spacing) {}

    std::vector<double> scales_;
    Spacing spacing_;
};

/// lambda(p) = (p+1)/(2(2p+1)) * ((p+2)/(p+1))^p, the GSP constant of x^p.
/// Throws NonPositiveExponent for p <= 0.
double lambda_of_p(double p);

/// All p in [p_lo, p_hi] with lambda_of_p(p) = lambda: sign-change scan over
/// grid_n points, bisection to 1e-10.  lambda(p) dips below 1/2 on (0, 1)
/// (minimum ~0.48202 near p ~0.3267) and rises toward e/4, so 0, 1 or 2 roots
/// are all possible.
std::vector<double> invert_lambda(double lambda, double p_lo, double p_hi, std::size_t grid_n = 10000);

/// Exponent implied by a scale-free centroid, inverting theta = (p+1)/(p+2).
double p_from_theta(double theta);

/// Moment bundles over the grid, computed in parallel, in grid order.
std::vector<MomentBundle> bundles_over(const FunctionSpec& spec, const ScaleGrid& grid, double tol = kDefaultTol);

struct ScaleResidual {
    double a = 0.0;
    double xbar = 0.0;
    double ybar = 0.0;
    double f_xbar = 0.0;
    double residual = 0.0;  // |ybar - lambda f(xbar)| / ybar
};

std::vector<ScaleResidual> gsp_residual_sweep(const FunctionSpec& spec, const ScaleGrid& grid, double lambda,
                                              double tol = kDefaultTol);

/// Least-squares GSP constant: sum ybar f(xbar) / sum f(xbar)^2.
double fit_lambda(const FunctionSpec& spec, const ScaleGrid& grid, double tol = kDefaultTol);
double fit_lambda(const FunctionSpec& spec, const std::vector<MomentBundle>& bundles);

struct PowerLawEstimate {
    double p_hat_theta = 0.0;       // median of p_from_theta over the grid
    double p_hat_elasticity = 0.0;  // median elasticity over a log grid of x
    double amp_hat = 0.0;           // geometric mean of f(x) / x^p_hat_elasticity
};

PowerLawEstimate recover_p(const FunctionSpec& spec, const ScaleGrid& grid, double tol = kDefaultTol);
PowerLawEstimate recover_p(const FunctionSpec& spec, const ScaleGrid& grid,
                           const std::vector<MomentBundle>& bundles);

enum class Verdict { PowerLaw, NotPowerLaw, Inconclusive };

std::string to_string(Verdict v);

struct DetectionTolerances {
    double gsp = 1e-6;
    double var = 1e-9;
    double quad = kDefaultTol;

    /// 1e-6 / 1e-9 for analytic specs, 1e-3 / 1e-5 for tabulated ones.
    static DetectionTolerances defaults_for(const FunctionSpec& spec);
};

struct DetectionResult {
    Verdict verdict = Verdict::Inconclusive;
    double p_hat_theta = 0.0;
    double p_hat_elasticity = 0.0;
    double amp_hat = 0.0;
    double lambda_hat = 0.0;
    double gsp_residual_max = 0.0;
    double variance_max = 0.0;
    /// Quadrature-error bounds on the two statistics above.
    double gsp_error_bound = 0.0;
    double variance_error_bound = 0.0;
    /// Exponents on [0.01, 10] whose lambda equals lambda_hat.
    std::vector<double> lambda_roots;
    std::vector<double> scales;
    std::vector<double> residuals;
    std::vector<double> variances;
    DetectionTolerances tolerances;
};

/// PowerLaw iff the GSP residual at lambda_hat, the variance functional and
/// the disagreement of the two exponent estimators all pass; Inconclusive when
/// quadrature error bounds come within 10x of a decision tolerance or a
/// quadrature failed to converge.  Throws Inadmissible if validate() fails.
DetectionResult classify(const FunctionSpec& spec, const ScaleGrid& grid, const DetectionTolerances& tol);
DetectionResult classify(const FunctionSpec& spec, const ScaleGrid& grid);

/// One row per scale for plotting: lambda defaults to the fitted constant.
struct SweepRow {
    double a, xbar, ybar, theta, A, B, C, residual, variance;
};

std::vector<SweepRow> scale_sweep(const FunctionSpec& spec, const ScaleGrid& grid, double tol,
                                  std::optional<double> lambda = std::nullopt);

}  // namespace gsplab
