#include "gamp/amplitude.hpp"
#include "gamp/dynamics.hpp"
#include "gamp/errors.hpp"
#include "gamp/loop.hpp"
#include "gamp/spectral.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

// Exit codes, also documented in the README.
enum ExitCode {
    kOk = 0,
    kGenericError = 1,
    kConfigError = 2,
    kRegimeError = 3,
    kIntegrationError = 4,
    kExtractionError = 5,
};

struct Options {
    std::string command;
    std::string config_path;
    std::string loop_preset;
    std::string engine = "all";
    std::string format = "json";
    std::string out;
    int n = 0;
    int steps = 512;
    int levels = 6;
    double tol = 1e-10;
    double fd_step = 1e-5;
    double ode_tol = 1e-10;
    double lambda = 1.0;
    double period = 100.0;
    std::vector<double> periods;
    std::vector<double> point;
};

json default_loop_spec(const std::string& kind) {
    if (kind == "ellipse") {
        return {{"kind", "ellipse"}, {"y0", 2.0}, {"rY", 0.5}, {"x0", 1.0}, {"rX", 0.5}};
    }
    if (kind == "constant-X-wobble") {
        return {{"kind", "constant-X-wobble"}, {"Y", 2.0}, {"Z", 1.0}, {"x0", 3.0}, {"xr", 0.5}};
    }
    if (kind == "constant") {
        return {{"kind", "constant"}, {"X", 3.0}, {"Y", 2.0}, {"Z", 1.0}};
    }
    if (kind == "custom-fourier") {
        throw std::invalid_argument("custom-fourier loops need a --config file with coefficients");
    }
    throw std::invalid_argument("unknown loop preset: " + kind);
}

gamp::FourierSeries fourier_from_json(const json& j) {
    gamp::FourierSeries f;
    f.constant = j.value("constant", 0.0);
    f.cos_coeffs = j.value("cos", std::vector<double>{});
    f.sin_coeffs = j.value("sin", std::vector<double>{});
    return f;
}

gamp::ParameterLoop loop_from_spec(const json& spec, double period) {
    const std::string kind = spec.value("kind", "ellipse");
    if (kind == "ellipse") {
        return gamp::make_ellipse(spec.value("y0", 2.0), spec.value("rY", 0.5),
                                  spec.value("x0", 1.0), spec.value("rX", 0.5), period);
    }
    if (kind == "constant-X-wobble") {
        return gamp::make_constant_x_wobble(spec.value("Y", 2.0), spec.value("Z", 1.0),
                                            spec.value("x0", 3.0), spec.value("xr", 0.5), period);
    }
    if (kind == "constant") {
        return gamp::make_constant_loop(
            {spec.value("X", 3.0), spec.value("Y", 2.0), spec.value("Z", 1.0)}, period);
    }
    if (kind == "custom-fourier") {
        if (!spec.contains("X") || !spec.contains("Y") || !spec.contains("Z")) {
            throw std::invalid_argument("custom-fourier loop spec needs X, Y, Z series");
        }
        return gamp::make_fourier_loop(fourier_from_json(spec.at("X")),
                                       fourier_from_json(spec.at("Y")),
                                       fourier_from_json(spec.at("Z")), period);
    }
    throw std::invalid_argument("unknown loop kind: " + kind);
}

json complex_to_json(std::complex<double> z) {
    return {{"re", z.real()}, {"im", z.imag()}};
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream file(out, std::ios::binary);
    if (!file) {
        throw std::invalid_argument("cannot open output file: " + out);
    }
    file << text;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// ---- subcommand bodies -----------------------------------------------------

json run_validate(const json& loop_spec, double period) {
    const gamp::ParameterLoop loop = loop_from_spec(loop_spec, period);
    const gamp::LoopValidation v = gamp::validate_loop(loop);
    return {{"valid", true},
            {"minDiscriminant", v.min_discriminant},
            {"minOmega", v.min_omega},
            {"argminS", v.argmin_s},
            {"minZ", v.min_z}};
}

json run_snapshot(const gamp::ParameterPoint& p, int n) {
    const gamp::PolyGaussianState psi = gamp::snapshot_state(p, n);
    const gamp::SpectralData sd = gamp::energy(p, n);
    json coeffs = json::array();
    for (const auto& c : psi.coeffs) coeffs.push_back(complex_to_json(c));
    const std::complex<double> nrm = gamp::inner_eta(psi, psi, p);
    return {{"point", {{"X", p.X}, {"Y", p.Y}, {"Z", p.Z}}},
            {"n", n},
            {"omega", sd.omega},
            {"growthRate", sd.growth_rate},
            {"a", complex_to_json(psi.a)},
            {"coeffs", coeffs},
            {"etaNormDeviation", std::abs(nrm - std::complex<double>{1.0, 0.0})}};
}

json run_gram(const gamp::ParameterPoint& p, int levels, std::string* csv) {
    std::vector<int> idx(levels);
    for (int i = 0; i < levels; ++i) idx[i] = i;
    const auto g = gamp::gram_matrix(p, idx);

    double max_dev = 0.0, max_off = 0.0;
    json matrix = json::array();
    std::ostringstream table;
    for (int j = 0; j < levels; ++j) {
        json row = json::array();
        for (int k = 0; k < levels; ++k) {
            row.push_back(complex_to_json(g[j][k]));
            const double dev =
                std::abs(g[j][k] - std::complex<double>{j == k ? 1.0 : 0.0, 0.0});
            max_dev = std::max(max_dev, dev);
            if (j != k) max_off = std::max(max_off, std::abs(g[j][k]));
            table << format_double(std::abs(g[j][k])) << (k + 1 == levels ? "" : ",");
        }
        table << '\n';
        matrix.push_back(row);
    }
    if (csv) *csv = table.str();
    return {{"point", {{"X", p.X}, {"Y", p.Y}, {"Z", p.Z}}},
            {"levels", levels},
            {"matrix", matrix},
            {"maxDeviation", max_dev},
            {"maxOffDiagonal", max_off}};
}

json run_gamma(const json& loop_spec, double period, int n, const std::string& engine,
               double tol, int steps, double fd_step, double ode_tol) {
    const gamp::ParameterLoop loop = loop_from_spec(loop_spec, period);
    const bool all = engine == "all";
    json results;
    std::optional<double> closed, connection, dynamics;

    if (all || engine == "closed") {
        const auto r = gamp::gamma_closed_form(loop, n, tol);
        closed = r.gamma;
        results["gammaClosed"] = r.gamma;
        results["loopIntegral"] = r.loop_integral;
        results["closedError"] = r.error;
    }
    if (all || engine == "connection") {
        const auto r = gamp::gamma_connection(loop, n, steps, fd_step);
        connection = r.gamma;
        results["gammaConnection"] = r.gamma;
        results["imaginaryPart"] = r.imaginary_part;
        results["connectionError"] = r.error_estimate;
    }
    if (all || engine == "dynamics") {
        const double g = gamp::gamma_dynamics(loop, n, ode_tol);
        dynamics = g;
        results["gammaDynamics"] = g;
    }
    results["dynamicalIntegral"] = gamp::dynamical_integral(loop, n, tol);
    if (closed && connection) {
        results["closedConnectionAgree"] = std::abs(*closed - *connection) <= 1e-6;
    }
    if (closed && dynamics) {
        // dynamics carries an O(1/T^2) adiabatic remainder; compare loosely
        results["closedDynamicsAgree"] =
            std::abs(*closed - *dynamics) <= std::max(2e-2 * std::abs(*closed), 1e-4);
    }
    return results;
}

json run_converge(const json& loop_spec, double period, int n,
                  const std::vector<double>& periods, double ode_tol, std::string* csv) {
    const gamp::ParameterLoop loop = loop_from_spec(loop_spec, period);
    const auto rows = gamp::convergence_study(loop, n, periods, ode_tol);
    json table = json::array();
    std::ostringstream text;
    text << "T,gamma_dyn,gamma_closed,abs_err,slope\n";
    for (const auto& r : rows) {
        table.push_back({{"T", r.period},
                         {"gamma_dyn", r.gamma_dyn},
                         {"gamma_closed", r.gamma_closed},
                         {"abs_err", r.abs_err},
                         {"slope", r.slope}});
        text << format_double(r.period) << ',' << format_double(r.gamma_dyn) << ','
             << format_double(r.gamma_closed) << ',' << format_double(r.abs_err) << ','
             << format_double(r.slope) << '\n';
    }
    if (csv) *csv = text.str();
    return {{"rows", table}};
}

json run_cubic_check(double lambda) {
    const gamp::CubicCheckReport r = gamp::cubic_operator_check(lambda);
    return {{"lambda", r.lambda},
            {"maxRelResidual", r.max_rel_residual},
            {"halfLineNorm", r.half_line_norm},
            {"normError", r.norm_error},
            {"expectedNorm", 1.0 / lambda}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Geometric amplitude factors for the generalized harmonic oscillator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    Options opt;
    auto add_common = [&opt](CLI::App* sub) {
        sub->add_option("--config", opt.config_path, "JSON config file; flags override it");
        sub->add_option("--loop", opt.loop_preset,
                        "loop preset: ellipse, constant-X-wobble, custom-fourier, constant");
        sub->add_option("--n", opt.n, "level index")->check(CLI::NonNegativeNumber);
        sub->add_option("--tol", opt.tol, "quadrature tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--out", opt.out, "output path (default stdout)");
        sub->add_option("--format", opt.format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--period", opt.period, "loop traversal time T")
            ->check(CLI::PositiveNumber);
        return sub;
    };

    auto* c_validate = add_common(app.add_subcommand("validate", "check a loop against the regime"));
    auto* c_snapshot = add_common(app.add_subcommand("snapshot", "gauge-fixed snapshot eigenstate"));
    auto* c_gram = add_common(app.add_subcommand("gram", "eta-pairing Gram matrix of snapshots"));
    auto* c_gamma = add_common(app.add_subcommand("gamma", "geometric amplitude of a loop"));
    auto* c_converge = add_common(app.add_subcommand("converge", "adiabatic convergence study"));
    auto* c_cubic = add_common(app.add_subcommand("cubic-check", "cubic-operator fixture check"));

    for (auto* sub : {c_snapshot, c_gram}) {
        sub->add_option("--point", opt.point, "parameter point X Y Z")->expected(3);
    }
    c_gram->add_option("--levels", opt.levels, "matrix size")->check(CLI::PositiveNumber);
    c_gamma->add_option("--engine", opt.engine, "closed, connection, dynamics or all")
        ->check(CLI::IsMember({"closed", "connection", "dynamics", "all"}));
    c_gamma->add_option("--steps", opt.steps, "connection quadrature panels");
    c_gamma->add_option("--fd-step", opt.fd_step, "connection finite-difference step");
    c_gamma->add_option("--ode-tol", opt.ode_tol, "dynamics ODE tolerance");
    c_converge->add_option("--periods", opt.periods, "comma-separated traversal times")
        ->delimiter(',');
    c_converge->add_option("--ode-tol", opt.ode_tol, "dynamics ODE tolerance");
    c_cubic->add_option("--lambda", opt.lambda, "cubic fixture eigenvalue scale")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfigError;
    }

    CLI::App* sub = app.get_subcommands().front();
    opt.command = sub->get_name();

    json report{{"command", opt.command},
                {"config", json::object()},
                {"results", json::object()},
                {"diagnostics", json::object()},
                {"errors", json::array()}};
    try {
        // resolve config: defaults <- config file <- command-line flags
        json cfg{{"n", opt.n},          {"engine", opt.engine},   {"tol", opt.tol},
                 {"steps", opt.steps},  {"fdStep", opt.fd_step},  {"odeTol", opt.ode_tol},
                 {"levels", opt.levels},{"lambda", opt.lambda},   {"period", opt.period},
                 {"periods", opt.periods.empty()
                                 ? std::vector<double>{25.0, 50.0, 100.0, 200.0}
                                 : opt.periods}};
        cfg["loop"] = default_loop_spec(opt.loop_preset.empty() ? "ellipse" : opt.loop_preset);
        if (!opt.config_path.empty()) {
            std::ifstream file(opt.config_path);
            if (!file) {
                throw std::invalid_argument("cannot read config file: " + opt.config_path);
            }
            json from_file;
            try {
                file >> from_file;
            } catch (const json::parse_error& e) {
                throw std::invalid_argument(std::string("config parse error: ") + e.what());
            }
            cfg.merge_patch(from_file);
        }
        // flags passed explicitly win over the config file
        auto passed = [sub](const std::string& name) {
            const CLI::Option* o = sub->get_option_no_throw(name);
            return o != nullptr && o->count() > 0;
        };
        if (passed("--loop")) cfg["loop"] = default_loop_spec(opt.loop_preset);
        if (passed("--n")) cfg["n"] = opt.n;
        if (passed("--tol")) cfg["tol"] = opt.tol;
        if (passed("--period")) cfg["period"] = opt.period;
        if (passed("--engine")) cfg["engine"] = opt.engine;
        if (passed("--steps")) cfg["steps"] = opt.steps;
        if (passed("--fd-step")) cfg["fdStep"] = opt.fd_step;
        if (passed("--ode-tol")) cfg["odeTol"] = opt.ode_tol;
        if (passed("--levels")) cfg["levels"] = opt.levels;
        if (passed("--lambda")) cfg["lambda"] = opt.lambda;
        if (passed("--periods")) cfg["periods"] = opt.periods;
        if (!opt.point.empty()) {
            cfg["point"] = {{"X", opt.point[0]}, {"Y", opt.point[1]}, {"Z", opt.point[2]}};
        }

        const int n = cfg.at("n").get<int>();
        const double period = cfg.at("period").get<double>();
        auto point_from_cfg = [&cfg, period]() -> gamp::ParameterPoint {
            if (cfg.contains("point")) {
                const json& p = cfg.at("point");
                return {p.value("X", 3.0), p.value("Y", 2.0), p.value("Z", 1.0)};
            }
            return loop_from_spec(cfg.at("loop"), period).point(0.0);
        };

        std::string csv;
        if (opt.command == "validate") {
            report["results"] = run_validate(cfg.at("loop"), period);
        } else if (opt.command == "snapshot") {
            report["results"] = run_snapshot(point_from_cfg(), n);
        } else if (opt.command == "gram") {
            report["results"] = run_gram(point_from_cfg(), cfg.at("levels").get<int>(), &csv);
        } else if (opt.command == "gamma") {
            report["results"] = run_gamma(cfg.at("loop"), period, n,
                                          cfg.at("engine").get<std::string>(),
                                          cfg.at("tol").get<double>(),
                                          cfg.at("steps").get<int>(),
                                          cfg.at("fdStep").get<double>(),
                                          cfg.at("odeTol").get<double>());
        } else if (opt.command == "converge") {
            report["results"] = run_converge(cfg.at("loop"), period, n,
                                             cfg.at("periods").get<std::vector<double>>(),
                                             cfg.at("odeTol").get<double>(), &csv);
        } else if (opt.command == "cubic-check") {
            report["results"] = run_cubic_check(cfg.at("lambda").get<double>());
        }

        report["config"] = cfg;
        report["diagnostics"] = {{"engineVersion", kVersion},
                                 {"tolerances",
                                  {{"tol", cfg.at("tol")},
                                   {"odeTol", cfg.at("odeTol")},
                                   {"fdStep", cfg.at("fdStep")}}}};

        const std::string format = cfg.value("format", opt.format);
        if (format == "csv") {
            if (csv.empty()) {
                throw std::invalid_argument("--format csv is only available for gram and converge");
            }
            emit(csv, opt.out);
        } else {
            emit(report.dump(2), opt.out);
        }
        return kOk;
    } catch (const std::exception& e) {
        int code = kGenericError;
        std::string type = "error";
        if (dynamic_cast<const gamp::regime_error*>(&e)) {
            code = kRegimeError;
            type = "regime_violation";
        } else if (dynamic_cast<const gamp::integration_error*>(&e) ||
                   dynamic_cast<const gamp::singular_pairing_error*>(&e)) {
            code = kIntegrationError;
            type = "integration_failure";
        } else if (dynamic_cast<const gamp::extraction_error*>(&e) ||
                   dynamic_cast<const gamp::gauge_error*>(&e)) {
            code = kExtractionError;
            type = "extraction_failure";
        } else if (dynamic_cast<const std::invalid_argument*>(&e) ||
                   dynamic_cast<const json::exception*>(&e)) {
            code = kConfigError;
            type = "config_error";
        }
        report["errors"].push_back({{"type", type}, {"message", e.what()}});
        std::cerr << report.dump(2) << '\n';
        return code;
    }
}
