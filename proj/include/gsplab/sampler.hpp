#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "gsplab/function_model.hpp"
#include "gsplab/rng.hpp"

namespace gsplab {

/// Quantile function of the self-generated measure mu_a(dx) = f(x) dx / F(a)
/// on (lower_limit, a].
///
/// PowerLaw specs use the closed form a * u^(1/(p+1)).  Otherwise a 256-knot
/// cumulative table brackets each quantile, and a bisection/secant solve on
/// F(x) - u F(a), with the in-knot partial integral by quadrature, polishes it
/// to tol * F(a).
class QuantileFunction {
public:
    static constexpr std::size_t kKnots = 256;

    QuantileFunction(FunctionSpec spec, double a, double tol = 1e-10);

    double operator()(double u) const;

    /// Unnormalized F(x) = integral of f over (lower_limit, x], x <= a.
    double cdf(double x) const;

    double total() const { return total_; }
    double a() const { return a_; }
    double lower() const { return lo_; }
    const FunctionSpec& spec() const { return spec_; }

private:
    double partial(std::size_t k, double x) const;

    FunctionSpec spec_;
    double a_;
    double lo_;
    double tol_;
    double total_ = 0.0;
    bool closed_form_ = false;
    std::vector<double> knots_;
    std::vector<double> cumulative_;
};

/// Convenience wrapper building a one-off QuantileFunction.
double inverse_cdf(const FunctionSpec& spec, double a, double u, double tol = 1e-10);

struct MCEstimate {
    double mean_x = 0.0;
    double mean_fx = 0.0;
    double stderr_x = 0.0;
    double stderr_fx = 0.0;
    double cov_x_fx = 0.0;  // sample covariance of (X, f(X)), for delta-method errors
    std::uint64_t n = 0;
};

/// Streaming first/second moments of (X, f(X)); merges are associative
/// (pairwise update), so chunked accumulation matches any grouping exactly
/// when the grouping is fixed.
class MCAccumulator {
public:
    void push(double x, double fx);
    void merge(const MCAccumulator& other);
    MCEstimate estimate() const;
    std::uint64_t count() const { return n_; }

private:
    std::uint64_t n_ = 0;
    double mx_ = 0.0, mf_ = 0.0;
    double m2x_ = 0.0, m2f_ = 0.0, cxf_ = 0.0;
};

/// Draws X ~ mu_a.  Draw number i uses uniform i of the counter stream, so
/// output is reproducible from (spec, a, seed, stream) and independent of the
/// number of worker threads.
class SamplerState {
public:
    SamplerState(FunctionSpec spec, double a, std::uint64_t seed, std::uint64_t stream = 0,
                 double tol = 1e-10);

    const FunctionSpec& spec() const { return quantile_->spec(); }
    double a() const { return quantile_->a(); }
    double Fa() const { return quantile_->total(); }
    std::uint64_t seed() const { return rng_.seed(); }
    std::uint64_t counter() const { return counter_; }

    /// Independent stream sharing the cached quantile table.
    SamplerState split(std::uint64_t stream_id) const;

    std::vector<double> sample(std::size_t n);

    /// Mean and standard error of X and f(X) over the next n draws (n >= 100).
    MCEstimate mc_estimates(std::size_t n);

private:
    SamplerState(std::shared_ptr<const QuantileFunction> q, CounterRng rng);

    std::shared_ptr<const QuantileFunction> quantile_;
    CounterRng rng_;
    std::uint64_t counter_ = 0;
};

}  // namespace gsplab
