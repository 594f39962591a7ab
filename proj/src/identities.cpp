#include "gsplab/identities.hpp"

#include <algorithm>
#include <cmath>

#include "gsplab/error.hpp"

namespace gsplab {

namespace {

constexpr double kDegenerateWeight = 1e-14;
constexpr double kNegativeRoundoff = -1e-13;
constexpr double kRelativeFdStep = 1e-5;

double s_floor(const FunctionSpec& spec, double a) { return std::min(spec.lower_limit() / a, 1.0); }

}  // namespace

ReductionCheck reduction_residuals(const FunctionSpec& spec, double a, double tol) {
    const MomentBundle m = moment_bundle(spec, a, tol);
    const ShapeProfile g(spec, a);
    const double s0 = s_floor(spec, a);

    auto gE = [&](double s) { return g(s) * spec.elasticity(a * s).value; };
    const QuadResult q1 = integrate(gE, s0, 1.0, tol);
    const QuadResult q2 = integrate([&](double s) { return s * gE(s); }, s0, 1.0, tol);
    const QuadResult q3 = integrate([&](double s) { return g(s) * gE(s); }, s0, 1.0, tol);

    double b1 = 0.0, b2 = 0.0, b3 = 0.0;
    if (s0 > 0.0) {
        const double g0 = g(s0);
        b1 = s0 * g0;
        b2 = s0 * s0 * g0;
        b3 = s0 * g0 * g0;
    }

    ReductionCheck r;
    r.lhs = {q1.value, q2.value, q3.value};
    r.rhs = {1.0 - m.A - b1, 1.0 - 2.0 * m.B - b2, 0.5 * (1.0 - m.C - b3)};
    for (int i = 0; i < 3; ++i) r.residual[i] = std::abs(r.lhs[i] - r.rhs[i]);
    r.converged = m.converged && q1.converged && q2.converged && q3.converged;
    return r;
}

AbcDerivatives abc_derivatives(const FunctionSpec& spec, const MomentBundle& m) {
    const double e = spec.elasticity(m.a).value;
    AbcDerivatives d;
    d.dA = (1.0 - (1.0 + e) * m.A) / m.a;
    d.dB = (1.0 - (2.0 + e) * m.B) / m.a;
    d.dC = (1.0 - (1.0 + 2.0 * e) * m.C) / m.a;
    d.dtheta = (d.dB * m.A - m.B * d.dA) / (m.A * m.A);
    return d;
}

AbcDerivatives abc_derivatives(const FunctionSpec& spec, double a, double tol) {
    return abc_derivatives(spec, moment_bundle(spec, a, tol));
}

double theta_prime_integral(const FunctionSpec& spec, double a, double tol) {
    const MomentBundle m = moment_bundle(spec, a, tol);
    const ShapeProfile g(spec, a);
    const QuadResult q = integrate(
        [&](double s) { return (s - m.theta) * g(s) * spec.elasticity(a * s).value; }, s_floor(spec, a), 1.0,
        tol);
    return q.value / (a * m.A);
}

FdDerivatives fd_derivatives(const FunctionSpec& spec, double a, double h, double tol, double fd_tol) {
    if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "step h must be > 0");
    if (!(a - h > spec.lower_limit())) {
        throw Error(ErrorCode::InvalidArgument, "a - h must stay inside the domain");
    }
    auto central = [&](double step) {
        const MomentBundle up = moment_bundle(spec, a + step, tol);
        const MomentBundle dn = moment_bundle(spec, a - step, tol);
        const double w = 2.0 * step;
        return AbcDerivatives{(up.A - dn.A) / w, (up.B - dn.B) / w, (up.C - dn.C) / w,
                              (up.theta - dn.theta) / w};
    };
    const AbcDerivatives coarse = central(h);
    const AbcDerivatives fine = central(0.5 * h);

    const auto c = coarse.as_array();
    const auto f = fine.as_array();
    bool disagree = false;
    for (int i = 0; i < 4; ++i) {
        const double scale = std::max({1.0, std::abs(c[i]), std::abs(f[i])});
        if (std::abs(c[i] - f[i]) > 10.0 * fd_tol * scale) disagree = true;
    }
    if (!disagree) return {coarse, false};

    auto rich = [](double dh, double dh2) { return (4.0 * dh2 - dh) / 3.0; };
    return {AbcDerivatives{rich(coarse.dA, fine.dA), rich(coarse.dB, fine.dB), rich(coarse.dC, fine.dC),
                           rich(coarse.dtheta, fine.dtheta)},
            true};
}

QuadResult weight_normalizer(const FunctionSpec& spec, const MomentBundle& m, double tol) {
    const ShapeProfile g(spec, m.a);
    return integrate([&](double s) { return (s - m.theta) * (s - m.theta) * g(s); }, s_floor(spec, m.a), 1.0,
                     tol);
}

double wm_residual(const FunctionSpec& spec, double a, double tol) {
    const MomentBundle m = moment_bundle(spec, a, tol);
    const QuadResult D = weight_normalizer(spec, m, tol);
    if (!(D.value >= kDegenerateWeight)) {
        throw Error(ErrorCode::DegenerateWeight, "quadratic weight normalizer D(a) vanishes");
    }
    const ShapeProfile g(spec, a);
    const double e_center = spec.elasticity(a * m.theta).value;
    const QuadResult num = integrate(
        [&](double s) {
            return (s - m.theta) * (s - m.theta) * g(s) * (spec.elasticity(a * s).value - e_center);
        },
        s_floor(spec, a), 1.0, tol);
    return num.value / D.value;
}

QuadResult variance_integral(const FunctionSpec& spec, const MomentBundle& m, double tol) {
    const ShapeProfile g(spec, m.a);
    const double e_center = spec.elasticity(m.a * m.theta).value;
    return integrate(
        [&](double s) {
            const double de = spec.elasticity(m.a * s).value - e_center;
            return (s - m.theta) * (s - m.theta) * g(s) * de * de;
        },
        s_floor(spec, m.a), 1.0, tol);
}

namespace {

double clamp_variance(double v) {
    if (v >= 0.0) return v;
    if (v > kNegativeRoundoff) return 0.0;
    throw Error(ErrorCode::NegativeVariance, "variance integral is negative beyond roundoff");
}

}  // namespace

double variance_functional(const FunctionSpec& spec, double a, double tol) {
    return clamp_variance(variance_integral(spec, moment_bundle(spec, a, tol), tol).value);
}

IdentityReport identity_report(const FunctionSpec& spec, double a, double tol) {
    IdentityReport r;
    r.a = a;
    const ReductionCheck red = reduction_residuals(spec, a, tol);
    r.reduction_residuals = red.residual;

    const MomentBundle m = moment_bundle(spec, a, tol);
    r.abc_prime_closed = abc_derivatives(spec, m);
    r.abc_prime_fd = fd_derivatives(spec, a, kRelativeFdStep * a, tol).value;

    const QuadResult D = weight_normalizer(spec, m, tol);
    r.D = D.value;
    if (!(D.value >= kDegenerateWeight)) {
        throw Error(ErrorCode::DegenerateWeight, "quadratic weight normalizer D(a) vanishes");
    }
    r.wm_residual = wm_residual(spec, a, tol);
    const QuadResult var = variance_integral(spec, m, tol);
    r.variance_value = clamp_variance(var.value);
    r.converged = red.converged && m.converged && D.converged && var.converged;
    return r;
}

}  // namespace gsplab
