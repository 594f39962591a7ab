#pragma once

// Admissible test functions shared by the unit and acceptance suites.

#include <cmath>
#include <string>
#include <vector>

#include "gsplab/function_model.hpp"

namespace gsplab::testing {

struct GalleryEntry {
    std::string label;
    FunctionSpec spec;
    bool power_law;
};

inline const std::vector<double>& gallery_exponents() {
    static const std::vector<double> ps = {0.3, 0.5, 1.0, 2.0, 5.0};
    return ps;
}

inline FunctionSpec custom_rational() {
    // x^2 / (1 + x), elasticity 2 - x/(1+x)
    return FunctionSpec::custom([](double x) { return x * x / (1.0 + x); },
                                [](double x) { return (x * x + 2.0 * x) / ((1.0 + x) * (1.0 + x)); },
                                "x^2/(1+x)");
}

inline FunctionSpec custom_saturating() {
    // x^2 / (1 + x^2), elasticity 2 / (1 + x^2)
    return FunctionSpec::custom([](double x) { return x * x / (1.0 + x * x); },
                                [](double x) { return 2.0 * x / ((1.0 + x * x) * (1.0 + x * x)); },
                                "x^2/(1+x^2)");
}

inline FunctionSpec custom_two_term() {
    return FunctionSpec::custom([](double x) { return std::pow(x, 1.5) + x * x * x; },
                                [](double x) { return 1.5 * std::sqrt(x) + 3.0 * x * x; }, "x^1.5+x^3");
}

/// Analytic gallery: power laws at every test exponent (two amplitudes),
/// perturbed power laws, and smooth custom non-power-laws.
inline std::vector<GalleryEntry> gallery() {
    std::vector<GalleryEntry> g;
    for (double p : gallery_exponents()) {
        g.push_back({"power p=" + std::to_string(p), FunctionSpec::power_law(1.0, p), true});
        g.push_back({"power amp=7 p=" + std::to_string(p), FunctionSpec::power_law(7.0, p), true});
    }
    g.push_back({"perturbed p=1 eps=0.1", FunctionSpec::perturbed_power_law(1.0, 0.1), false});
    g.push_back({"perturbed p=1 eps=0.05", FunctionSpec::perturbed_power_law(1.0, 0.05), false});
    g.push_back({"perturbed p=2 eps=0.1", FunctionSpec::perturbed_power_law(2.0, 0.1), false});
    g.push_back({"perturbed p=0.5 eps=0.05 amp=3", FunctionSpec::perturbed_power_law(0.5, 0.05, 3.0), false});
    g.push_back({"custom x^2/(1+x)", custom_rational(), false});
    g.push_back({"custom x^2/(1+x^2)", custom_saturating(), false});
    g.push_back({"custom x^1.5+x^3", custom_two_term(), false});
    return g;
}

/// Exact power-law samples on a log grid.
inline FunctionSpec tabulated_power(double amp, double p, double lo, double hi, int n) {
    std::vector<double> x(n), f(n);
    for (int i = 0; i < n; ++i) {
        x[i] = lo * std::pow(hi / lo, double(i) / double(n - 1));
        f[i] = amp * std::pow(x[i], p);
    }
    return FunctionSpec::tabulated(std::move(x), std::move(f));
}

inline FunctionSpec tabulated_perturbed(double p, double eps, double lo, double hi, int n) {
    std::vector<double> x(n), f(n);
    for (int i = 0; i < n; ++i) {
        x[i] = lo * std::pow(hi / lo, double(i) / double(n - 1));
        f[i] = std::pow(x[i], p) * (1.0 + eps * std::sin(std::log(x[i])));
    }
    return FunctionSpec::tabulated(std::move(x), std::move(f));
}

inline double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace gsplab::testing
