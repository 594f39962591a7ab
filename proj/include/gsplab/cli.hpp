#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace gsplab::cli {

enum ExitCode : int {
    kPass = 0,          // verify passed / detect found a power law
    kFail = 1,          // residual failure / not a power law
    kConfigError = 2,
    kInadmissible = 3,
    kInconclusive = 4,
};

/// Everything one batch run needs.  The JSON file form uses flat keys that
/// mirror the long flags with '-' replaced by '_'.
struct RunConfig {
    std::string command;
    std::string family = "power";  // power | perturbed | tabulated
    double p = 1.0;
    double amp = 1.0;
    double eps = 0.0;
    std::string csv;
    double a_min = 0.1;
    double a_max = 10.0;
    std::size_t a_count = 17;
    std::string spacing = "log";
    double tol = 1e-10;
    std::uint64_t seed = 0;
    std::string out;
    std::string format;  // empty: per-command default
    // sample
    double a = 1.0;
    std::size_t n = 1000;
    bool estimate = false;
    // sweep / detect overrides
    std::optional<double> lambda;
    std::optional<double> tol_gsp;
    std::optional<double> tol_var;

    bool operator==(const RunConfig&) const = default;
};

nlohmann::json to_json(const RunConfig& c);

/// Throws gsplab::Error(ParseError) on unknown keys or mistyped values.
RunConfig config_from_json(const nlohmann::json& j);

/// Runs `gsp-lab` with args (program name excluded).  Report text goes to out
/// unless --out is given; diagnostics go to err.  Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gsplab::cli
