#pragma once

#include "gsplab/function_model.hpp"
#include "gsplab/quadrature.hpp"

namespace gsplab {

inline constexpr double kDefaultTol = 1e-10;

/// Integrand selector for integrals over (0, a]:
///   F: f,  H: x f,  G: f^2,  I1: u f'(u),  I2: u^2 f'(u),  I3: u f(u) f'(u).
enum class MomentKind { F, H, G, I1, I2, I3 };

/// Integral of the selected integrand over (lower_limit, a].
///
/// The engine integrates the scale-free form in s = x/a on (0, 1], with the
/// integrand divided by its natural magnitude at x = a, so tol acts as a
/// tolerance relative to that magnitude.  Value and error are returned in
/// x-units.
QuadResult integrate_moment(const FunctionSpec& spec, double a, MomentKind kind,
                            double tol = kDefaultTol);

struct Primitives {
    QuadResult F, H, G;
};

Primitives primitives(const FunctionSpec& spec, double a, double tol = kDefaultTol);

/// All scale-indexed quantities at one truncation scale a.
struct MomentBundle {
    double a = 0.0;
    double fa = 0.0;  // f(a), shared by every normalization
    double F = 0.0, H = 0.0, G = 0.0;
    double A = 0.0, B = 0.0, C = 0.0;
    double theta = 0.0;
    double xbar = 0.0, ybar = 0.0;
    /// Largest relative quadrature error estimate among F, H, G.  Quotients
    /// such as theta carry roughly twice this.
    double rel_error = 0.0;
    bool converged = true;
};

MomentBundle moment_bundle(const FunctionSpec& spec, double a, double tol = kDefaultTol);

/// g_a(s) = f(a s) / f(a) on (0, 1].
class ShapeProfile {
public:
    ShapeProfile(FunctionSpec spec, double a);

    double a() const { return a_; }
    double fa() const { return fa_; }
    const FunctionSpec& spec() const { return spec_; }

    double operator()(double s) const;

    /// d/ds g_a(s) = E(a s) g_a(s) / s.
    double ds(double s) const;

    /// d/da g_a(s) = g_a(s) (E(a s) - E(a)) / a.
    double da(double s) const;

private:
    void check(double s) const;

    FunctionSpec spec_;
    double a_;
    double fa_;
};

/// Checks a > 0 and, for tabulated specs, that (lower_limit, a] lies in the hull.
void require_scale(const FunctionSpec& spec, double a);

}  // namespace gsplab
