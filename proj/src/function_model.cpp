#include "gsplab/function_model.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "gsplab/error.hpp"

namespace gsplab {

namespace {

constexpr double kCustomGuard = 1e-300;
constexpr double kHullSlack = 1e-12;
constexpr double kTableStep = 1e-5;

constexpr double kProbeFloor = 1e-8;
constexpr int kDecayWindow = 8;

std::string fmt_num(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

void require_positive_input(double x) {
    if (!(x > 0.0)) {
        throw Error(ErrorCode::NonPositiveInput, "x must be > 0 (got " + fmt_num(x) + ")");
    }
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::string to_string(Family family) {
    switch (family) {
    case Family::PowerLaw: return "PowerLaw";
    case Family::PerturbedPowerLaw: return "PerturbedPowerLaw";
    case Family::Custom: return "Custom";
    case Family::Tabulated: return "Tabulated";
    }
    return "Unknown";
}

std::string to_string(Hypothesis h) {
    switch (h) {
    case Hypothesis::Positivity: return "positivity";
    case Hypothesis::VanishingAtZero: return "f(0+)=0";
    case Hypothesis::Parameters: return "parameters";
    }
    return "unknown";
}

FunctionSpec FunctionSpec::power_law(double amp, double p) {
    FunctionSpec s;
    s.family_ = Family::PowerLaw;
    s.amp_ = amp;
    s.p_ = p;
    return s;
}

FunctionSpec FunctionSpec::perturbed_power_law(double p, double eps, double amp) {
    FunctionSpec s;
    s.family_ = Family::PerturbedPowerLaw;
    s.amp_ = amp;
    s.p_ = p;
    s.eps_ = eps;
    return s;
}

FunctionSpec FunctionSpec::custom(Callable f, Callable df, std::string name) {
    if (!f || !df) {
        throw Error(ErrorCode::InvalidArgument, "custom spec needs both f and f'");
    }
    FunctionSpec s;
    s.family_ = Family::Custom;
    s.name_ = std::move(name);
    s.custom_ = std::make_shared<const CustomFns>(CustomFns{std::move(f), std::move(df)});
    return s;
}

FunctionSpec FunctionSpec::tabulated(std::vector<double> x, std::vector<double> f) {
    FunctionSpec s;
    s.family_ = Family::Tabulated;
    s.table_ = std::make_shared<const LogLogInterpolant>(x, f);
    return s;
}

std::optional<std::pair<double, double>> FunctionSpec::hull() const {
    if (!table_) return std::nullopt;
    return std::make_pair(table_->x_min(), table_->x_max());
}

double FunctionSpec::lower_limit() const { return table_ ? table_->x_min() : 0.0; }

double FunctionSpec::checked_table_arg(double x) const {
    const double lo = table_->x_min();
    const double hi = table_->x_max();
    if (x < lo) {
        if (x >= lo * (1.0 - kHullSlack)) return lo;
    } else if (x > hi) {
        if (x <= hi * (1.0 + kHullSlack)) return hi;
    } else {
        return x;
    }
    throw Error(ErrorCode::DomainExceeded,
                "x=" + fmt_num(x) + " outside sample hull [" + fmt_num(lo) + ", " + fmt_num(hi) + "]");
}

double FunctionSpec::eval(double x) const {
    require_positive_input(x);
    double v = 0.0;
    switch (family_) {
    case Family::PowerLaw:
        v = amp_ * std::pow(x, p_);
        break;
    case Family::PerturbedPowerLaw:
        v = amp_ * std::pow(x, p_) * (1.0 + eps_ * std::sin(std::log(x)));
        break;
    case Family::Custom:
        v = custom_->f(x);
        break;
    case Family::Tabulated:
        v = (*table_)(checked_table_arg(x));
        break;
    }
    if (!(v > 0.0)) {
        throw Error(ErrorCode::NonPositiveValue,
                    describe() + " evaluates to " + fmt_num(v) + " at x=" + fmt_num(x));
    }
    return v;
}

double FunctionSpec::derivative(double x) const {
    require_positive_input(x);
    switch (family_) {
    case Family::PowerLaw:
        return amp_ * p_ * std::pow(x, p_ - 1.0);
    case Family::PerturbedPowerLaw: {
        const double lx = std::log(x);
        return amp_ * std::pow(x, p_ - 1.0) * (p_ * (1.0 + eps_ * std::sin(lx)) + eps_ * std::cos(lx));
    }
    case Family::Custom:
        return custom_->df(x);
    case Family::Tabulated: {
        const double xc = checked_table_arg(x);
        const double lo = table_->x_min();
        const double hi = table_->x_max();
        const double h = kTableStep * xc;
        if (xc - h >= lo && xc + h <= hi) {
            return ((*table_)(xc + h) - (*table_)(xc - h)) / (2.0 * h);
        }
        // second-order one-sided stencil at the hull edges
        const double s = (xc - h < lo) ? h : -h;
        const double f0 = (*table_)(xc);
        const double f1 = (*table_)(xc + s);
        const double f2 = (*table_)(xc + 2.0 * s);
        return (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * s);
    }
    }
    return 0.0;
}

ElasticityValue FunctionSpec::elasticity(double x) const {
    require_positive_input(x);
    switch (family_) {
    case Family::PowerLaw:
        return {x, p_};
    case Family::PerturbedPowerLaw: {
        const double lx = std::log(x);
        const double denom = 1.0 + eps_ * std::sin(lx);
        if (!(denom > 0.0)) {
            throw Error(ErrorCode::NonPositiveValue, describe() + " is not positive at x=" + fmt_num(x));
        }
        return {x, p_ + eps_ * std::cos(lx) / denom};
    }
    case Family::Custom: {
        const double f = custom_->f(x);
        if (!(f > 0.0) || std::abs(f) < kCustomGuard) {
            throw Error(ErrorCode::NonPositiveValue, describe() + " evaluates to " + fmt_num(f) +
                                                         " at x=" + fmt_num(x));
        }
        return {x, x * custom_->df(x) / f};
    }
    case Family::Tabulated:
        return {x, x * derivative(x) / eval(x)};
    }
    return {x, 0.0};
}

std::string FunctionSpec::describe() const {
    switch (family_) {
    case Family::PowerLaw:
        return "PowerLaw(amp=" + fmt_num(amp_) + ", p=" + fmt_num(p_) + ")";
    case Family::PerturbedPowerLaw:
        return "PerturbedPowerLaw(amp=" + fmt_num(amp_) + ", p=" + fmt_num(p_) + ", eps=" + fmt_num(eps_) + ")";
    case Family::Custom:
        return "Custom(" + name_ + ")";
    case Family::Tabulated:
        return "Tabulated(n=" + std::to_string(table_->abscissae().size()) + ", [" +
               fmt_num(table_->x_min()) + ", " + fmt_num(table_->x_max()) + "])";
    }
    return "Unknown";
}

ValidationReport validate(const FunctionSpec& spec) {
    auto fail = [](Hypothesis h, std::string detail) {
        return ValidationReport{false, h, std::move(detail)};
    };
    auto probe = [&](double x) -> std::optional<double> {
        try {
            const double v = spec.eval(x);
            if (!std::isfinite(v)) return std::nullopt;
            return v;
        } catch (const Error&) {
            return std::nullopt;
        }
    };

    double lo = kProbeFloor;
    double hi = 1.0 / kProbeFloor;
    if (const auto h = spec.hull()) {
        lo = h->first;
        hi = h->second;
    }

    constexpr int kGrid = 401;
    const double llo = std::log(lo);
    const double lhi = std::log(hi);
    for (int i = 0; i < kGrid; ++i) {
        const double x = i == kGrid - 1 ? hi : std::exp(llo + (lhi - llo) * i / (kGrid - 1));
        if (!probe(x)) {
            return fail(Hypothesis::Positivity, "f is not positive and finite at x=" + fmt_num(x));
        }
    }

    // Dyadic decay toward 0 (toward x_min for tabulated data).
    std::vector<double> probes;
    if (spec.hull()) {
        for (int j = kDecayWindow - 1; j >= 0; --j) {
            const double x = lo * std::ldexp(1.0, j);
            if (x <= hi) probes.push_back(x);
        }
    } else {
        for (int k = 0; std::ldexp(1.0, -k) >= kProbeFloor; ++k) probes.push_back(std::ldexp(1.0, -k));
    }
    const std::size_t first = probes.size() > kDecayWindow ? probes.size() - kDecayWindow : 0;
    for (std::size_t i = first; i + 1 < probes.size(); ++i) {
        const double f0 = *probe(probes[i]);
        const double f1 = *probe(probes[i + 1]);
        if (!(f1 < f0)) {
            return fail(Hypothesis::VanishingAtZero,
                        "f does not decrease toward 0 between x=" + fmt_num(probes[i]) + " and x=" +
                            fmt_num(probes[i + 1]));
        }
    }

    if (spec.family() == Family::PowerLaw || spec.family() == Family::PerturbedPowerLaw) {
        if (!(spec.amp() > 0.0) || !std::isfinite(spec.amp())) {
            return fail(Hypothesis::Parameters, "amp must be positive");
        }
        if (!(spec.p() > 0.0) || !std::isfinite(spec.p())) {
            return fail(Hypothesis::Parameters, "p must be positive");
        }
        if (spec.family() == Family::PerturbedPowerLaw && !(std::abs(spec.eps()) < 1.0)) {
            return fail(Hypothesis::Parameters, "|eps| must be < 1");
        }
    }
    return {};
}

FunctionSpec parse_tabulated_csv(std::istream& in) {
    std::vector<double> xs, fs;
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    auto parse_error = [&](const std::string& msg) {
        return Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": " + msg);
    };
    auto to_double = [&](const std::string& field) {
        const std::string t = trim(field);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(t, &used);
        } catch (const std::exception&) {
            throw parse_error("not a number: '" + t + "'");
        }
        if (used != t.size() || !std::isfinite(v)) throw parse_error("not a finite number: '" + t + "'");
        return v;
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
            throw parse_error("expected two comma-separated columns");
        }
        const double x = to_double(line.substr(0, comma));
        const double f = to_double(line.substr(comma + 1));
        if (!(x > 0.0)) throw parse_error("x must be positive");
        if (!(f > 0.0)) throw parse_error("f must be positive");
        if (!xs.empty() && !(x > xs.back())) throw parse_error("x must be strictly increasing");
        xs.push_back(x);
        fs.push_back(f);
    }
    if (!header_seen) throw Error(ErrorCode::ParseError, "empty input (missing header)");
    if (xs.size() < 4) throw Error(ErrorCode::ParseError, "need at least 4 samples");
    return FunctionSpec::tabulated(std::move(xs), std::move(fs));
}

FunctionSpec load_tabulated_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
    return parse_tabulated_csv(in);
}

}  // namespace gsplab
