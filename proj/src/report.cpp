#include "gsplab/report.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "gsplab/error.hpp"

namespace gsplab {

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void row(std::ostream& os, std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
        if (!first) os << ',';
        os << fmt17(v);
        first = false;
    }
    os << '\n';
}

nlohmann::json abc_json(const AbcDerivatives& d) {
    return {{"dA", d.dA}, {"dB", d.dB}, {"dC", d.dC}, {"dtheta", d.dtheta}};
}

}  // namespace

void write_identity_csv(std::ostream& os, const std::vector<IdentityReport>& rows, const std::vector<bool>& pass) {
    os << "a,res_I1,res_I2,res_I3,dA_closed,dB_closed,dC_closed,dtheta_closed,"
          "dA_fd,dB_fd,dC_fd,dtheta_fd,wm_residual,variance,D,pass\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        const auto& c = r.abc_prime_closed;
        const auto& f = r.abc_prime_fd;
        row(os, {r.a, r.reduction_residuals[0], r.reduction_residuals[1], r.reduction_residuals[2], c.dA, c.dB,
                 c.dC, c.dtheta, f.dA, f.dB, f.dC, f.dtheta, r.wm_residual, r.variance_value, r.D,
                 i < pass.size() && pass[i] ? 1.0 : 0.0});
    }
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "a,xbar,ybar,theta,A,B,C,residual,variance\n";
    for (const auto& r : rows) row(os, {r.a, r.xbar, r.ybar, r.theta, r.A, r.B, r.C, r.residual, r.variance});
}

void write_draws_csv(std::ostream& os, const std::vector<double>& draws) {
    os << "index,x\n";
    for (std::size_t i = 0; i < draws.size(); ++i) os << i << ',' << fmt17(draws[i]) << '\n';
}

void write_estimate_csv(std::ostream& os, const MCEstimate& e) {
    os << "n,mean_x,mean_fx,stderr_x,stderr_fx,cov_x_fx\n";
    row(os, {double(e.n), e.mean_x, e.mean_fx, e.stderr_x, e.stderr_fx, e.cov_x_fx});
}

void write_detection_csv(std::ostream& os, const DetectionResult& r) {
    os << "a,residual,variance\n";
    for (std::size_t i = 0; i < r.scales.size(); ++i) row(os, {r.scales[i], r.residuals[i], r.variances[i]});
}

nlohmann::json to_json(const DetectionResult& r) {
    nlohmann::json scales = nlohmann::json::array();
    for (std::size_t i = 0; i < r.scales.size(); ++i) {
        scales.push_back({{"a", r.scales[i]}, {"residual", r.residuals[i]}, {"variance", r.variances[i]}});
    }
    return {
        {"verdict", to_string(r.verdict)},
        {"estimates",
         {{"p_hat_theta", r.p_hat_theta},
          {"p_hat_elasticity", r.p_hat_elasticity},
          {"amp_hat", r.amp_hat},
          {"lambda_hat", r.lambda_hat},
          {"lambda_roots", r.lambda_roots}}},
        {"gsp_residual_max", r.gsp_residual_max},
        {"variance_max", r.variance_max},
        {"error_bounds", {{"gsp", r.gsp_error_bound}, {"variance", r.variance_error_bound}}},
        {"tolerances", {{"gsp", r.tolerances.gsp}, {"var", r.tolerances.var}, {"quad", r.tolerances.quad}}},
        {"per_scale", scales},
    };
}

nlohmann::json to_json(const MCEstimate& e) {
    return {{"n", e.n},           {"mean_x", e.mean_x},       {"mean_fx", e.mean_fx},
            {"stderr_x", e.stderr_x}, {"stderr_fx", e.stderr_fx}, {"cov_x_fx", e.cov_x_fx}};
}

nlohmann::json to_json(const IdentityReport& r) {
    return {{"a", r.a},
            {"reduction_residuals", r.reduction_residuals},
            {"abc_prime_closed", abc_json(r.abc_prime_closed)},
            {"abc_prime_fd", abc_json(r.abc_prime_fd)},
            {"wm_residual", r.wm_residual},
            {"variance", r.variance_value},
            {"D", r.D},
            {"converged", r.converged}};
}

nlohmann::json to_json(const SweepRow& r) {
    return {{"a", r.a}, {"xbar", r.xbar}, {"ybar", r.ybar}, {"theta", r.theta},       {"A", r.A},
            {"B", r.B}, {"C", r.C},       {"residual", r.residual}, {"variance", r.variance}};
}

CsvTable read_numeric_csv(std::istream& in) {
    CsvTable t;
    std::string line;
    int lineno = 0;
    auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::stringstream ss(s);
        std::string cell;
        while (std::getline(ss, cell, ',')) out.push_back(cell);
        return out;
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (t.header.empty()) {
            t.header = split(line);
            continue;
        }
        std::vector<double> values;
        for (const auto& cell : split(line)) {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(cell, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != cell.size() || cell.empty()) {
                throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": bad number '" + cell + "'");
            }
            values.push_back(v);
        }
        if (values.size() != t.header.size()) {
            throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": column count mismatch");
        }
        t.rows.push_back(std::move(values));
    }
    return t;
}

}  // namespace gsplab
