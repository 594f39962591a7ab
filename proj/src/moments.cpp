#include "gsplab/moments.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gsplab/error.hpp"

namespace gsplab {

void require_scale(const FunctionSpec& spec, double a) {
    if (!(a > 0.0)) {
        throw Error(ErrorCode::NonPositiveInput, "scale a must be > 0");
    }
    if (const auto h = spec.hull()) {
        if (!(a > h->first) || a > h->second) {
            throw Error(ErrorCode::DomainExceeded,
                        "scale a=" + std::to_string(a) + " outside sample hull");
        }
    }
}

QuadResult integrate_moment(const FunctionSpec& spec, double a, MomentKind kind, double tol) {
    require_scale(spec, a);
    const double fa = spec.eval(a);
    const double s_lo = std::min(spec.lower_limit() / a, 1.0);

    double norm = fa;
    switch (kind) {
    case MomentKind::F:
    case MomentKind::I1: norm = fa; break;
    case MomentKind::H:
    case MomentKind::I2: norm = a * fa; break;
    case MomentKind::G:
    case MomentKind::I3: norm = fa * fa; break;
    }

    auto integrand = [&](double s) {
        const double x = a * s;
        switch (kind) {
        case MomentKind::F: return spec.eval(x) / norm;
        case MomentKind::H: return x * spec.eval(x) / norm;
        case MomentKind::G: {
            const double g = spec.eval(x) / fa;
            return g * g;
        }
        case MomentKind::I1: return x * spec.derivative(x) / norm;
        case MomentKind::I2: return x * x * spec.derivative(x) / norm;
        case MomentKind::I3: return x * (spec.eval(x) / fa) * (spec.derivative(x) / fa);
        }
        return 0.0;
    };

    QuadResult r = integrate(integrand, s_lo, 1.0, tol);
    const double scale = a * norm;
    r.value *= scale;
    r.error_estimate *= scale;
    return r;
}

Primitives primitives(const FunctionSpec& spec, double a, double tol) {
    return {integrate_moment(spec, a, MomentKind::F, tol), integrate_moment(spec, a, MomentKind::H, tol),
            integrate_moment(spec, a, MomentKind::G, tol)};
}

MomentBundle moment_bundle(const FunctionSpec& spec, double a, double tol) {
    const Primitives prim = primitives(spec, a, tol);
    MomentBundle m;
    m.a = a;
    m.fa = spec.eval(a);
    m.F = prim.F.value;
    m.H = prim.H.value;
    m.G = prim.G.value;
    m.A = m.F / (a * m.fa);
    m.B = m.H / (a * a * m.fa);
    m.C = m.G / (a * m.fa * m.fa);
    m.theta = m.B / m.A;
    m.xbar = m.H / m.F;
    m.ybar = m.G / (2.0 * m.F);
    m.rel_error = std::max({prim.F.error_estimate / std::abs(m.F), prim.H.error_estimate / std::abs(m.H),
                            prim.G.error_estimate / std::abs(m.G)});
    m.converged = prim.F.converged && prim.H.converged && prim.G.converged;
    return m;
}

ShapeProfile::ShapeProfile(FunctionSpec spec, double a) : spec_(std::move(spec)), a_(a) {
    require_scale(spec_, a_);
    fa_ = spec_.eval(a_);
}

void ShapeProfile::check(double s) const {
    if (!(s > 0.0)) {
        throw Error(ErrorCode::NonPositiveInput, "shape profile is defined on (0, 1]");
    }
    if (s > 1.0) {
        throw Error(ErrorCode::DomainExceeded, "shape profile is defined on (0, 1]");
    }
}

double ShapeProfile::operator()(double s) const {
    check(s);
    if (s == 1.0) return 1.0;
    return spec_.eval(a_ * s) / fa_;
}

double ShapeProfile::ds(double s) const {
    const double g = (*this)(s);
    return spec_.elasticity(a_ * s).value * g / s;
}

double ShapeProfile::da(double s) const {
    const double g = (*this)(s);
    return g * (spec_.elasticity(a_ * s).value - spec_.elasticity(a_).value) / a_;
}

}  // namespace gsplab
