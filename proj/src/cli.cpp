#include "gsplab/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"

#include "gsplab/detector.hpp"
#include "gsplab/error.hpp"
#include "gsplab/function_model.hpp"
#include "gsplab/identities.hpp"
#include "gsplab/parallel.hpp"
#include "gsplab/report.hpp"
#include "gsplab/sampler.hpp"

namespace gsplab::cli {

namespace {

using nlohmann::json;

constexpr std::size_t kMinEstimateDraws = 100;
constexpr double kFdStep = 1e-5;

struct VerifyThresholds {
    double reduction;
    double fd_abs;
    double fd_rel;
    double wm;
    double variance;
};

VerifyThresholds thresholds_for(const FunctionSpec& spec, const RunConfig& cfg) {
    VerifyThresholds t = spec.family() == Family::Tabulated ? VerifyThresholds{1e-6, 1e-5, 1e-4, 1e-3, 1e-5}
                                                            : VerifyThresholds{1e-7, 1e-5, 1e-4, 1e-9, 1e-12};
    if (cfg.tol_var) t.variance = *cfg.tol_var;
    return t;
}

bool within(double closed, double fd, const VerifyThresholds& t) {
    return std::abs(closed - fd) <= std::max(t.fd_abs, t.fd_rel * std::abs(closed));
}

bool passes(const IdentityReport& r, const VerifyThresholds& t) {
    for (double res : r.reduction_residuals) {
        if (!(res <= t.reduction)) return false;
    }
    const auto c = r.abc_prime_closed.as_array();
    const auto f = r.abc_prime_fd.as_array();
    for (int i = 0; i < 4; ++i) {
        if (!within(c[i], f[i], t)) return false;
    }
    return std::abs(r.wm_residual) <= t.wm && r.variance_value <= t.variance && r.converged;
}

FunctionSpec build_spec(const RunConfig& c) {
    if (!c.csv.empty() || c.family == "tabulated") {
        if (c.csv.empty()) throw Error(ErrorCode::InvalidArgument, "family 'tabulated' needs --csv");
        return load_tabulated_csv(c.csv);
    }
    if (c.family == "power") return FunctionSpec::power_law(c.amp, c.p);
    if (c.family == "perturbed") return FunctionSpec::perturbed_power_law(c.p, c.eps, c.amp);
    throw Error(ErrorCode::InvalidArgument, "unknown family '" + c.family + "'");
}

ScaleGrid build_grid(const RunConfig& c, const FunctionSpec& spec) {
    if (c.spacing != "log" && c.spacing != "linear") {
        throw Error(ErrorCode::InvalidArgument, "spacing must be log or linear");
    }
    return ScaleGrid::make(c.a_min, c.a_max, c.a_count, c.spacing == "log" ? Spacing::Log : Spacing::Linear)
        .clipped_to(spec);
}

std::string format_for(const RunConfig& c) {
    if (!c.format.empty()) return c.format;
    if (c.command == "detect") return "json";
    if (c.command == "sample" && c.estimate) return "json";
    return "csv";
}

int cmd_verify(const RunConfig& c, const FunctionSpec& spec, std::ostream& os) {
    const ScaleGrid grid = build_grid(c, spec);
    const VerifyThresholds t = thresholds_for(spec, c);
    const std::size_t n = grid.count();
    std::vector<IdentityReport> reports(n);
    parallel_for(n, [&](std::size_t i) {
        const double a = grid.scales()[i];
        IdentityReport r = identity_report(spec, a, std::min(c.tol, kIdentityTol));
        reports[i] = r;
    });
    std::vector<bool> pass(n);
    bool all = true;
    for (std::size_t i = 0; i < n; ++i) {
        pass[i] = passes(reports[i], t);
        all = all && pass[i];
    }
    if (format_for(c) == "json") {
        json arr = json::array();
        for (std::size_t i = 0; i < n; ++i) {
            json j = to_json(reports[i]);
            j["pass"] = static_cast<bool>(pass[i]);
            arr.push_back(j);
        }
        os << json{{"spec", spec.describe()}, {"pass", all}, {"scales", arr}}.dump(2) << '\n';
    } else {
        write_identity_csv(os, reports, pass);
    }
    return all ? kPass : kFail;
}

int cmd_detect(const RunConfig& c, const FunctionSpec& spec, std::ostream& os) {
    const ScaleGrid grid = build_grid(c, spec);
    DetectionTolerances tol = DetectionTolerances::defaults_for(spec);
    tol.quad = c.tol;
    if (c.tol_gsp) tol.gsp = *c.tol_gsp;
    if (c.tol_var) tol.var = *c.tol_var;
    const DetectionResult r = classify(spec, grid, tol);
    if (format_for(c) == "csv") {
        write_detection_csv(os, r);
    } else {
        json j = to_json(r);
        j["spec"] = spec.describe();
        os << j.dump(2) << '\n';
    }
    switch (r.verdict) {
    case Verdict::PowerLaw: return kPass;
    case Verdict::NotPowerLaw: return kFail;
    case Verdict::Inconclusive: return kInconclusive;
    }
    return kInconclusive;
}

int cmd_sweep(const RunConfig& c, const FunctionSpec& spec, std::ostream& os) {
    const ScaleGrid grid = build_grid(c, spec);
    const auto rows = scale_sweep(spec, grid, c.tol, c.lambda);
    if (format_for(c) == "json") {
        json arr = json::array();
        for (const auto& r : rows) arr.push_back(to_json(r));
        os << arr.dump(2) << '\n';
    } else {
        write_sweep_csv(os, rows);
    }
    return kPass;
}

int cmd_sample(const RunConfig& c, const FunctionSpec& spec, std::ostream& os) {
    if (c.estimate && c.n < kMinEstimateDraws) {
        throw Error(ErrorCode::InvalidArgument, "--n is below the estimate minimum of 100 draws");
    }
    if (c.n == 0) throw Error(ErrorCode::InvalidArgument, "--n must be >= 1");
    SamplerState state(spec, c.a, c.seed, 0, c.tol);
    const bool as_json = format_for(c) == "json";
    if (c.estimate) {
        const MCEstimate e = state.mc_estimates(c.n);
        if (as_json) {
            json j = to_json(e);
            j["a"] = c.a;
            j["seed"] = c.seed;
            j["spec"] = spec.describe();
            os << j.dump(2) << '\n';
        } else {
            write_estimate_csv(os, e);
        }
    } else {
        const auto draws = state.sample(c.n);
        if (as_json) {
            os << json{{"a", c.a}, {"seed", c.seed}, {"draws", draws}}.dump() << '\n';
        } else {
            write_draws_csv(os, draws);
        }
    }
    return kPass;
}

int exit_for(const Error& e) {
    switch (e.code()) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidArgument:
    case ErrorCode::DomainExceeded: return kConfigError;
    default: return kInadmissible;
    }
}

}  // namespace

json to_json(const RunConfig& c) {
    json j = {{"command", c.command}, {"family", c.family}, {"p", c.p},           {"amp", c.amp},
              {"eps", c.eps},         {"csv", c.csv},       {"a_min", c.a_min},   {"a_max", c.a_max},
              {"a_count", c.a_count}, {"spacing", c.spacing}, {"tol", c.tol},     {"seed", c.seed},
              {"out", c.out},         {"format", c.format}, {"a", c.a},           {"n", c.n},
              {"estimate", c.estimate}};
    if (c.lambda) j["lambda"] = *c.lambda;
    if (c.tol_gsp) j["tol_gsp"] = *c.tol_gsp;
    if (c.tol_var) j["tol_var"] = *c.tol_var;
    return j;
}

RunConfig config_from_json(const json& j) {
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "config must be a JSON object");
    static const std::set<std::string> known = {"command", "family", "p",       "amp",     "eps",    "csv",
                                                "a_min",   "a_max",  "a_count", "spacing", "tol",    "seed",
                                                "out",     "format", "a",       "n",       "estimate", "lambda",
                                                "tol_gsp", "tol_var"};
    for (const auto& [k, v] : j.items()) {
        if (!known.count(k)) throw Error(ErrorCode::ParseError, "unknown config key '" + k + "'");
    }
    RunConfig c;
    try {
        auto get = [&](const char* key, auto& field) {
            if (j.contains(key)) j.at(key).get_to(field);
        };
        get("command", c.command);
        get("family", c.family);
        get("p", c.p);
        get("amp", c.amp);
        get("eps", c.eps);
        get("csv", c.csv);
        get("a_min", c.a_min);
        get("a_max", c.a_max);
        get("a_count", c.a_count);
        get("spacing", c.spacing);
        get("tol", c.tol);
        get("seed", c.seed);
        get("out", c.out);
        get("format", c.format);
        get("a", c.a);
        get("n", c.n);
        get("estimate", c.estimate);
        if (j.contains("lambda")) c.lambda = j.at("lambda").get<double>();
        if (j.contains("tol_gsp")) c.tol_gsp = j.at("tol_gsp").get<double>();
        if (j.contains("tol_var")) c.tol_var = j.at("tol_var").get<double>();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("config: ") + e.what());
    }
    return c;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"gsp-lab: centroid scaling verification and power-law detection", "gsp-lab"};
    RunConfig flags;
    std::string config_path;

    auto* command = app.add_option("command", flags.command, "verify | detect | sweep | sample")
                        ->check(CLI::IsMember({"verify", "detect", "sweep", "sample"}));
    auto* family = app.add_option("--family", flags.family, "power | perturbed | tabulated")
                       ->check(CLI::IsMember({"power", "perturbed", "tabulated"}));
    auto* p = app.add_option("--p", flags.p, "exponent");
    auto* amp = app.add_option("--amp", flags.amp, "amplitude");
    auto* eps = app.add_option("--eps", flags.eps, "perturbation amplitude");
    auto* csv = app.add_option("--csv", flags.csv, "tabulated samples (x,f CSV with header)");
    auto* a_min = app.add_option("--a-min", flags.a_min, "smallest truncation scale");
    auto* a_max = app.add_option("--a-max", flags.a_max, "largest truncation scale");
    auto* a_count = app.add_option("--a-count", flags.a_count, "number of scales (>= 5)");
    auto* spacing = app.add_option("--spacing", flags.spacing, "log | linear");
    auto* tol = app.add_option("--tol", flags.tol, "quadrature tolerance");
    auto* seed = app.add_option("--seed", flags.seed, "sampler seed");
    auto* outp = app.add_option("--out", flags.out, "output path (default stdout)");
    auto* format = app.add_option("--format", flags.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    auto* a = app.add_option("--a", flags.a, "truncation scale for sample");
    auto* n = app.add_option("--n", flags.n, "number of draws");
    auto* estimate = app.add_flag("--estimate", flags.estimate, "emit Monte Carlo estimates instead of draws");
    auto* lambda = app.add_option("--lambda", flags.lambda, "fixed GSP constant for sweep residuals");
    auto* tol_gsp = app.add_option("--tol-gsp", flags.tol_gsp, "detector GSP residual tolerance");
    auto* tol_var = app.add_option("--tol-var", flags.tol_var, "variance functional tolerance");
    app.add_option("--config", config_path, "JSON config with flat keys; flags override it");

    std::vector<std::string> argv_store = {"gsp-lab"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : argv_store) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kPass;
    } catch (const CLI::ParseError& e) {
        err << "gsp-lab: " << e.what() << '\n';
        return kConfigError;
    }

    try {
        RunConfig cfg;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw Error(ErrorCode::ParseError, "cannot open config " + config_path);
            json j;
            try {
                in >> j;
            } catch (const json::exception& e) {
                throw Error(ErrorCode::ParseError, std::string("config: ") + e.what());
            }
            cfg = config_from_json(j);
        }
        auto take = [](CLI::Option* opt, auto& dst, const auto& src) {
            if (opt->count() > 0) dst = src;
        };
        take(command, cfg.command, flags.command);
        take(family, cfg.family, flags.family);
        take(p, cfg.p, flags.p);
        take(amp, cfg.amp, flags.amp);
        take(eps, cfg.eps, flags.eps);
        take(csv, cfg.csv, flags.csv);
        take(a_min, cfg.a_min, flags.a_min);
        take(a_max, cfg.a_max, flags.a_max);
        take(a_count, cfg.a_count, flags.a_count);
        take(spacing, cfg.spacing, flags.spacing);
        take(tol, cfg.tol, flags.tol);
        take(seed, cfg.seed, flags.seed);
        take(outp, cfg.out, flags.out);
        take(format, cfg.format, flags.format);
        take(a, cfg.a, flags.a);
        take(n, cfg.n, flags.n);
        take(estimate, cfg.estimate, flags.estimate);
        take(lambda, cfg.lambda, flags.lambda);
        take(tol_gsp, cfg.tol_gsp, flags.tol_gsp);
        take(tol_var, cfg.tol_var, flags.tol_var);

        if (cfg.command.empty()) throw Error(ErrorCode::InvalidArgument, "missing command");
        if (!(cfg.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "--tol must be > 0");

        const FunctionSpec spec = build_spec(cfg);
        if (const ValidationReport v = validate(spec); !v) {
            err << "gsp-lab: inadmissible spec " << spec.describe() << ": " << to_string(*v.violated) << " ("
                << v.detail << ")\n";
            return kInadmissible;
        }

        std::ostringstream report;
        int code = kPass;
        if (cfg.command == "verify") {
            code = cmd_verify(cfg, spec, report);
        } else if (cfg.command == "detect") {
            code = cmd_detect(cfg, spec, report);
        } else if (cfg.command == "sweep") {
            code = cmd_sweep(cfg, spec, report);
        } else if (cfg.command == "sample") {
            code = cmd_sample(cfg, spec, report);
        } else {
            throw Error(ErrorCode::InvalidArgument, "unknown command '" + cfg.command + "'");
        }

        if (cfg.out.empty()) {
            out << report.str();
        } else {
            std::ofstream file(cfg.out, std::ios::binary);
            if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write " + cfg.out);
            file << report.str();
        }
        return code;
    } catch (const Error& e) {
        err << "gsp-lab: " << e.what() << '\n';
        return exit_for(e);
    }
}

}  // namespace gsplab::cli
