#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gsplab/interpolation.hpp"

namespace gsplab {

enum class Family { PowerLaw, PerturbedPowerLaw, Custom, Tabulated };

std::string to_string(Family family);

struct ElasticityValue {
    double x;
    double value;
};

/// An admissible positive function on (0, inf) with f(0+) = 0.
///
/// Immutable after construction; copies share the tabulated/custom payload,
/// so every member is safe to call concurrently.
///
///   PowerLaw           f(x) = amp * x^p
///   PerturbedPowerLaw  f(x) = amp * x^p * (1 + eps * sin(log x))
///   Custom             user callables for f and f'
///   Tabulated          samples interpolated monotonically in log-log space
///
/// Constructors accept any finite parameters; admissibility (p > 0, |eps| < 1,
/// positivity, decay at 0) is checked by validate() and reported as data.
class FunctionSpec {
public:
    using Callable = std::function<double(double)>;

    static FunctionSpec power_law(double amp, double p);
    static FunctionSpec perturbed_power_law(double p, double eps, double amp = 1.0);
    static FunctionSpec custom(Callable f, Callable df, std::string name = "custom");
    static FunctionSpec tabulated(std::vector<double> x, std::vector<double> f);

    Family family() const { return family_; }
    double amp() const { return amp_; }
    double p() const { return p_; }
    double eps() const { return eps_; }
    const std::string& name() const { return name_; }

    /// Sample table, or nullptr for analytic families.
    const LogLogInterpolant* table() const { return table_.get(); }

    /// Closed hull of the samples for Tabulated specs.
    std::optional<std::pair<double, double>> hull() const;

    /// Left end of every integral over "(0, a]": 0, or x_min for Tabulated.
    double lower_limit() const;

    double eval(double x) const;
    double derivative(double x) const;
    ElasticityValue elasticity(double x) const;

    /// Human-readable one-liner, e.g. "PowerLaw(amp=1, p=2)".
    std::string describe() const;

private:
    struct CustomFns {
        Callable f;
        Callable df;
    };

    FunctionSpec() = default;
    double checked_table_arg(double x) const;

    Family family_ = Family::PowerLaw;
    double amp_ = 1.0;
    double p_ = 1.0;
    double eps_ = 0.0;
    std::string name_;
    std::shared_ptr<const LogLogInterpolant> table_;
    std::shared_ptr<const CustomFns> custom_;
};

enum class Hypothesis { Positivity, VanishingAtZero, Parameters };

std::string to_string(Hypothesis h);

struct ValidationReport {
    bool passed = true;
    std::optional<Hypothesis> violated;
    std::string detail;

    explicit operator bool() const { return passed; }
};

/// Probes the standing hypotheses in order: positivity on a log grid, decay
/// of f along dyadic probes toward 0, then family parameter constraints.
/// Violations are reported, never thrown.
ValidationReport validate(const FunctionSpec& spec);

/// Two-column CSV "x,f" with a header line.  Errors carry 1-based line numbers.
FunctionSpec parse_tabulated_csv(std::istream& in);
FunctionSpec load_tabulated_csv(const std::string& path);

}  // namespace gsplab
