#include "gsplab/detector.hpp"

#include <algorithm>
#include <cmath>

#include "gsplab/error.hpp"
#include "gsplab/identities.hpp"
#include "gsplab/parallel.hpp"
#include "gsplab/roots.hpp"

namespace gsplab {

namespace {

constexpr double kDefaultGridMin = 0.1;
constexpr double kDefaultGridMax = 10.0;
constexpr std::size_t kDefaultGridCount = 17;
constexpr double kHullFloorFactor = 100.0;
constexpr std::size_t kElasticityProbes = 65;
constexpr double kEstimatorAgreement = 0.01;
constexpr double kLambdaRootLo = 0.01;
constexpr double kLambdaRootHi = 10.0;

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::vector<double> log_points(double lo, double hi, std::size_t n) {
    std::vector<double> x(n);
    const double ratio = hi / lo;
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = i == 0 ? lo : i + 1 == n ? hi : lo * std::pow(ratio, double(i) / double(n - 1));
    }
    return x;
}

}  // namespace

std::string to_string(Spacing s) { return s == Spacing::Log ? "log" : "linear"; }

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::PowerLaw: return "PowerLaw";
    case Verdict::NotPowerLaw: return "NotPowerLaw";
    case Verdict::Inconclusive: return "Inconclusive";
    }
    return "Unknown";
}

ScaleGrid ScaleGrid::make(double min, double max, std::size_t count, Spacing spacing) {
    if (!(min > 0.0) || !(max > min) || !std::isfinite(max)) {
        throw Error(ErrorCode::InvalidArgument, "scale grid needs 0 < min < max");
    }
    if (count < kMinCount) {
        throw Error(ErrorCode::InvalidArgument, "scale grid needs at least 5 scales");
    }
    std::vector<double> s;
    if (spacing == Spacing::Log) {
        s = log_points(min, max, count);
    } else {
        s.resize(count);
        for (std::size_t i = 0; i < count; ++i) {
            s[i] = i + 1 == count ? max : min + (max - min) * double(i) / double(count - 1);
        }
    }
    return ScaleGrid(std::move(s), spacing);
}

ScaleGrid ScaleGrid::default_for(const FunctionSpec& spec) {
    return make(kDefaultGridMin, kDefaultGridMax, kDefaultGridCount).clipped_to(spec);
}

ScaleGrid ScaleGrid::clipped_to(const FunctionSpec& spec) const {
    const auto hull = spec.hull();
    if (!hull) return *this;
    const double lo = std::max(min(), kHullFloorFactor * hull->first);
    const double hi = std::min(max(), hull->second);
    if (!(hi > lo)) {
        throw Error(ErrorCode::DomainExceeded, "scale grid does not intersect the usable sample hull");
    }
    if (lo == min() && hi == max()) return *this;
    return make(lo, hi, count(), spacing_);
}

double lambda_of_p(double p) {
    if (!(p > 0.0)) throw Error(ErrorCode::NonPositiveExponent, "lambda(p) requires p > 0");
    return (p + 1.0) / (2.0 * (2.0 * p + 1.0)) * std::pow((p + 2.0) / (p + 1.0), p);
}

std::vector<double> invert_lambda(double lambda, double p_lo, double p_hi, std::size_t grid_n) {
    if (!(p_lo > 0.0) || !(p_hi > p_lo)) {
        throw Error(ErrorCode::InvalidArgument, "p range must satisfy 0 < lo < hi");
    }
    return find_all_roots([lambda](double p) { return lambda_of_p(p) - lambda; }, p_lo, p_hi, grid_n, 1e-10);
}

double p_from_theta(double theta) {
    if (!(theta > 0.0 && theta < 1.0)) {
        throw Error(ErrorCode::ThetaOutOfRange, "theta must lie in (0, 1)");
    }
    return (2.0 * theta - 1.0) / (1.0 - theta);
}

std::vector<MomentBundle> bundles_over(const FunctionSpec& spec, const ScaleGrid& grid, double tol) {
    std::vector<MomentBundle> out(grid.count());
    parallel_for(grid.count(), [&](std::size_t i) { out[i] = moment_bundle(spec, grid.scales()[i], tol); });
    return out;
}

namespace {

std::vector<ScaleResidual> residuals_from(const FunctionSpec& spec, const std::vector<MomentBundle>& bundles,
                                          double lambda) {
    std::vector<ScaleResidual> out;
    out.reserve(bundles.size());
    for (const auto& m : bundles) {
        const double fx = spec.eval(m.xbar);
        out.push_back({m.a, m.xbar, m.ybar, fx, std::abs(m.ybar - lambda * fx) / m.ybar});
    }
    return out;
}

}  // namespace

std::vector<ScaleResidual> gsp_residual_sweep(const FunctionSpec& spec, const ScaleGrid& grid, double lambda,
                                              double tol) {
    return residuals_from(spec, bundles_over(spec, grid, tol), lambda);
}

double fit_lambda(const FunctionSpec& spec, const std::vector<MomentBundle>& bundles) {
    double num = 0.0, den = 0.0;
    for (const auto& m : bundles) {
        const double fx = spec.eval(m.xbar);
        num += m.ybar * fx;
        den += fx * fx;
    }
    if (!(den > 0.0)) throw Error(ErrorCode::DegenerateFit, "sum of f(xbar)^2 vanishes");
    return num / den;
}

double fit_lambda(const FunctionSpec& spec, const ScaleGrid& grid, double tol) {
    return fit_lambda(spec, bundles_over(spec, grid, tol));
}

PowerLawEstimate recover_p(const FunctionSpec& spec, const ScaleGrid& grid,
                           const std::vector<MomentBundle>& bundles) {
    PowerLawEstimate est;
    std::vector<double> from_theta;
    from_theta.reserve(bundles.size());
    for (const auto& m : bundles) from_theta.push_back(p_from_theta(m.theta));
    est.p_hat_theta = median(std::move(from_theta));

    const std::vector<double> xs = log_points(grid.min(), grid.max(), kElasticityProbes);
    std::vector<double> e;
    e.reserve(xs.size());
    for (double x : xs) e.push_back(spec.elasticity(x).value);
    est.p_hat_elasticity = median(std::move(e));

    double log_sum = 0.0;
    for (double x : xs) log_sum += std::log(spec.eval(x)) - est.p_hat_elasticity * std::log(x);
    est.amp_hat = std::exp(log_sum / double(xs.size()));
    return est;
}

PowerLawEstimate recover_p(const FunctionSpec& spec, const ScaleGrid& grid, double tol) {
    return recover_p(spec, grid, bundles_over(spec, grid, tol));
}

DetectionTolerances DetectionTolerances::defaults_for(const FunctionSpec& spec) {
    if (spec.family() == Family::Tabulated) return {1e-3, 1e-5, kDefaultTol};
    return {1e-6, 1e-9, kDefaultTol};
}

DetectionResult classify(const FunctionSpec& spec, const ScaleGrid& grid, const DetectionTolerances& tol) {
    if (const ValidationReport v = validate(spec); !v) {
        throw Error(ErrorCode::Inadmissible, to_string(*v.violated) + ": " + v.detail);
    }
    if (grid.count() < ScaleGrid::kMinCount) {
        throw Error(ErrorCode::InvalidArgument, "classification needs at least 5 scales");
    }

    const std::size_t n = grid.count();
    std::vector<MomentBundle> bundles(n);
    std::vector<QuadResult> variances(n);
    parallel_for(n, [&](std::size_t i) {
        bundles[i] = moment_bundle(spec, grid.scales()[i], tol.quad);
        variances[i] = variance_integral(spec, bundles[i], kIdentityTol);
    });

    DetectionResult r;
    r.tolerances = tol;
    r.lambda_hat = fit_lambda(spec, bundles);
    const PowerLawEstimate est = recover_p(spec, grid, bundles);
    r.p_hat_theta = est.p_hat_theta;
    r.p_hat_elasticity = est.p_hat_elasticity;
    r.amp_hat = est.amp_hat;
    r.lambda_roots = invert_lambda(r.lambda_hat, kLambdaRootLo, kLambdaRootHi);

    bool converged = true;
    const auto res = residuals_from(spec, bundles, r.lambda_hat);
    for (std::size_t i = 0; i < n; ++i) {
        const double var = std::max(variances[i].value, 0.0);
        r.scales.push_back(res[i].a);
        r.residuals.push_back(res[i].residual);
        r.variances.push_back(var);
        r.gsp_residual_max = std::max(r.gsp_residual_max, res[i].residual);
        r.variance_max = std::max(r.variance_max, var);
        // ybar and xbar are quotients of two integrals; f(xbar) moves by E(xbar) times xbar's error.
        const double e_xbar = std::abs(spec.elasticity(bundles[i].xbar).value);
        r.gsp_error_bound = std::max(r.gsp_error_bound, 2.0 * bundles[i].rel_error * (1.0 + e_xbar));
        r.variance_error_bound = std::max(r.variance_error_bound, variances[i].error_estimate);
        converged = converged && bundles[i].converged && variances[i].converged;
    }

    const bool gsp_ok = r.gsp_residual_max <= tol.gsp;
    const bool var_ok = r.variance_max <= tol.var;
    const bool agree =
        std::abs(r.p_hat_theta - r.p_hat_elasticity) <= kEstimatorAgreement * std::max(1.0, std::abs(r.p_hat_theta));
    const bool resolved = converged && 10.0 * r.gsp_error_bound <= tol.gsp && 10.0 * r.variance_error_bound <= tol.var;

    if (!resolved) {
        r.verdict = Verdict::Inconclusive;
    } else if (gsp_ok && var_ok && agree) {
        r.verdict = Verdict::PowerLaw;
    } else {
        r.verdict = Verdict::NotPowerLaw;
    }
    return r;
}

DetectionResult classify(const FunctionSpec& spec, const ScaleGrid& grid) {
    return classify(spec, grid, DetectionTolerances::defaults_for(spec));
}

std::vector<SweepRow> scale_sweep(const FunctionSpec& spec, const ScaleGrid& grid, double tol,
                                  std::optional<double> lambda) {
    const std::size_t n = grid.count();
    std::vector<MomentBundle> bundles(n);
    std::vector<double> variances(n);
    parallel_for(n, [&](std::size_t i) {
        bundles[i] = moment_bundle(spec, grid.scales()[i], tol);
        variances[i] = std::max(variance_integral(spec, bundles[i], kIdentityTol).value, 0.0);
    });
    const double lam = lambda ? *lambda : fit_lambda(spec, bundles);
    const auto res = residuals_from(spec, bundles, lam);
    std::vector<SweepRow> rows;
    rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& m = bundles[i];
        rows.push_back({m.a, m.xbar, m.ybar, m.theta, m.A, m.B, m.C, res[i].residual, variances[i]});
    }
    return rows;
}

}  // namespace gsplab
