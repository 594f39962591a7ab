#pragma once

#include <array>

#include "gsplab/function_model.hpp"
#include "gsplab/moments.hpp"

namespace gsplab {

/// Identity checks run tighter than the moment default; their residuals are
/// compared against thresholds down to 1e-12.
inline constexpr double kIdentityTol = 1e-12;

/// Integration-by-parts reductions in normalized (s) form:
///   int g E ds = 1 - A,   int s g E ds = 1 - 2B,   int g^2 E ds = (1 - C)/2.
/// For tabulated specs the lower limit is s0 = x_min / a and the right-hand
/// sides carry the boundary terms s0 g(s0), s0^2 g(s0), s0 g(s0)^2.
struct ReductionCheck {
    std::array<double, 3> lhs{};
    std::array<double, 3> rhs{};
    std::array<double, 3> residual{};  // |lhs - rhs|
    bool converged = true;
};

ReductionCheck reduction_residuals(const FunctionSpec& spec, double a, double tol = kIdentityTol);

/// Scale derivatives of A, B, C and theta.
struct AbcDerivatives {
    double dA = 0.0, dB = 0.0, dC = 0.0, dtheta = 0.0;

    std::array<double, 4> as_array() const { return {dA, dB, dC, dtheta}; }
};

/// Closed forms A' = (1-(1+E)A)/a, B' = (1-(2+E)B)/a, C' = (1-(1+2E)C)/a,
/// theta' = (B'A - BA')/A^2 with E = E(a).
AbcDerivatives abc_derivatives(const FunctionSpec& spec, double a, double tol = kIdentityTol);
AbcDerivatives abc_derivatives(const FunctionSpec& spec, const MomentBundle& m);

/// theta' from its integral representation (1/(aA)) int (s-theta) g E ds.
double theta_prime_integral(const FunctionSpec& spec, double a, double tol = kIdentityTol);

struct FdDerivatives {
    AbcDerivatives value;
    bool richardson = false;  // true when the h/2 pass disagreed and was extrapolated
};

/// Central differences (Q(a+h) - Q(a-h)) / 2h of the bundle fields.  A second
/// pass at h/2 is run; if the two differ by more than 10 * fd_tol (relative
/// to magnitude) the Richardson combination (4 D(h/2) - D(h)) / 3 is returned.
FdDerivatives fd_derivatives(const FunctionSpec& spec, double a, double h, double tol = kIdentityTol,
                             double fd_tol = 1e-7);

/// D(a) = int (s - theta)^2 g_a(s) ds.
QuadResult weight_normalizer(const FunctionSpec& spec, const MomentBundle& m, double tol = kIdentityTol);

/// [int (s-theta)^2 g E(as) ds] / D - E(a theta), evaluated as a single
/// integral of (s-theta)^2 g (E(as) - E(a theta)) over D.
double wm_residual(const FunctionSpec& spec, double a, double tol = kIdentityTol);

/// int (s-theta)^2 g (E(as) - E(a theta))^2 ds with theta frozen from the bundle.
QuadResult variance_integral(const FunctionSpec& spec, const MomentBundle& m, double tol = kIdentityTol);

/// Clamped variance_integral value: roundoff above -1e-13 maps to 0, anything
/// more negative throws NegativeVariance.
double variance_functional(const FunctionSpec& spec, double a, double tol = kIdentityTol);

struct IdentityReport {
    double a = 0.0;
    std::array<double, 3> reduction_residuals{};
    AbcDerivatives abc_prime_closed;
    AbcDerivatives abc_prime_fd;
    double wm_residual = 0.0;
    double variance_value = 0.0;
    double D = 0.0;
    bool converged = true;
};

/// Everything above at one scale; the finite-difference step is 1e-5 * a.
IdentityReport identity_report(const FunctionSpec& spec, double a, double tol = kIdentityTol);

}  // namespace gsplab
