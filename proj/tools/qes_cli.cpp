// Command-line front end: exact spectra, Delta(E) scans, the reference
// finite-difference spectrum, and the combined report.
//
// Exit codes: 0 success, 2 configuration problem, 3 computational failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "qes/errors.hpp"
#include "qes/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitCompute = 3;

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

struct CliConfig {
    qes::QesModel model;
    // scan
    std::string parity = "odd";
    int degree = 9;
    double window_lo = -12.0;
    double window_hi = -4.0;
    double step = 0.01;
    bool normalize_delta = false;
    std::string scan_output = "delta_curve.txt";
    // reference
    qes::ReferenceOptions reference;
    bool reference_enabled = true;
    std::string reference_output;
    // report
    std::string report_output = "report.json";
};

void apply_json_config(CliConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw qes::ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw qes::ConfigError("config is not valid JSON: " + std::string(e.what()));
    }
    const auto get = [](const nlohmann::json& o, const char* key, auto& dst) {
        if (o.contains(key)) dst = o.at(key).get<std::decay_t<decltype(dst)>>();
    };
    if (j.contains("model")) {
        const auto& m = j.at("model");
        get(m, "alpha", cfg.model.alpha);
        get(m, "beta", cfg.model.beta);
        get(m, "gamma", cfg.model.gamma);
        get(m, "sigma", cfg.model.sigma);
        get(m, "n", cfg.model.n);
    }
    if (j.contains("scan")) {
        const auto& s = j.at("scan");
        get(s, "parity", cfg.parity);
        get(s, "degree", cfg.degree);
        if (s.contains("window")) {
            const auto w = s.at("window").get<std::vector<double>>();
            if (w.size() != 2) throw qes::ConfigError("scan.window must be [lo, hi]");
            cfg.window_lo = w[0];
            cfg.window_hi = w[1];
        }
        get(s, "step", cfg.step);
        get(s, "normalize_delta", cfg.normalize_delta);
        get(s, "output", cfg.scan_output);
    }
    if (j.contains("reference")) {
        const auto& r = j.at("reference");
        get(r, "L", cfg.reference.L);
        get(r, "N", cfg.reference.N);
        get(r, "k_max", cfg.reference.k_max);
        get(r, "tol", cfg.reference.tol);
        get(r, "richardson", cfg.reference.richardson);
        get(r, "enabled", cfg.reference_enabled);
        get(r, "output", cfg.reference_output);
    }
    if (j.contains("report")) get(j.at("report"), "output", cfg.report_output);
}

qes::Parity parse_parity(const std::string& s) {
    if (s == "odd") return qes::Parity::odd;
    if (s == "even") return qes::Parity::even;
    throw qes::ConfigError("parity must be 'odd' or 'even', got '" + s + "'");
}

void parse_window(const std::string& s, double& lo, double& hi) {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
        throw qes::ConfigError("window must be 'lo,hi', got '" + s + "'");
    try {
        lo = std::stod(s.substr(0, comma));
        hi = std::stod(s.substr(comma + 1));
    } catch (const std::exception&) {
        throw qes::ConfigError("window must be two numbers 'lo,hi', got '" + s + "'");
    }
}

void check_scan_config(const CliConfig& cfg) {
    const qes::Parity p = parse_parity(cfg.parity);
    const int lam = p == qes::Parity::odd ? 1 : 0;
    if (cfg.degree < lam || (cfg.degree - lam) % 2 != 0)
        throw qes::ConfigError("degree " + std::to_string(cfg.degree) +
                               " is inconsistent with parity '" + cfg.parity + "'");
    if (!(cfg.window_lo < cfg.window_hi))
        throw qes::ConfigError("scan window is empty");
    if (cfg.step <= 0) throw qes::ConfigError("scan step must be positive");
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw qes::ConfigError("cannot open output file: " + path);
    return file;
}

int cmd_exact(const CliConfig& cfg) {
    const qes::QesCondition cond = qes::qes_condition(cfg.model);
    if (!cond.satisfied)
        throw qes::ConfigError("QES coupling condition not satisfied: implied n = " +
                               fmt9(cond.implied_n) + ", configured n = " +
                               std::to_string(cfg.model.n));
    const qes::ExactSpectrum spec = qes::solve_exact_spectrum(cfg.model);
    std::cout << "# exact terminating spectrum (n = " << cfg.model.n << ")\n";
    std::cout << "# termination polynomial: " << spec.termination.str("En") << "\n";
    for (const auto& e : spec.entries) {
        std::cout << "E = " << fmt9(e.energy);
        if (e.energy_exact) std::cout << " (exact " << qes::to_string(*e.energy_exact) << ")";
        std::cout << "  nodes = " << e.node_count << "  P(x) =";
        for (int k = 0; k <= e.polynomial.degree(); ++k)
            std::cout << " " << fmt9(qes::to_double(e.polynomial[k]));
        std::cout << "\n";
    }
    return kExitOk;
}

int cmd_scan(const CliConfig& cfg) {
    check_scan_config(cfg);
    const qes::TruncatedState st =
        qes::make_truncated_state(cfg.model, parse_parity(cfg.parity), cfg.degree);
    qes::ScanOptions so;
    so.normalize = cfg.normalize_delta;
    const qes::DeltaCurve curve =
        qes::scan_delta(st, cfg.window_lo, cfg.window_hi, cfg.step, so);

    std::ofstream file;
    std::ostream& out = open_output(file, cfg.scan_output);
    out << "# E delta\n";
    for (const auto& s : curve.samples) out << fmt9(s.E) << " " << fmt9(s.delta) << "\n";
    out << "# minima (" << curve.minima.size() << ")\n";
    for (const auto& m : curve.minima)
        out << "# minimum E_star=" << fmt9(m.E_star) << " delta=" << fmt9(m.delta_star)
            << " nodes=" << m.node_count << " physical=" << (m.physical ? 1 : 0)
            << " zero_crossing=" << (m.zero_crossing ? 1 : 0) << "\n";
    if (&out != &std::cout)
        std::cout << "wrote " << curve.samples.size() << " samples, " << curve.minima.size()
                  << " minima to " << cfg.scan_output << "\n";
    return kExitOk;
}

int cmd_reference(const CliConfig& cfg) {
    const qes::ReferenceSpectrum spec = qes::compute_reference(cfg.model, cfg.reference);
    std::ofstream file;
    std::ostream& out = open_output(file, cfg.reference_output);
    out << "# level E\n";
    for (size_t k = 0; k < spec.eigenvalues.size(); ++k)
        out << k << " " << fmt9(spec.eigenvalues[k]) << "\n";
    return kExitOk;
}

int cmd_report(const CliConfig& cfg) {
    qes::ReportOptions opts;
    opts.reference = cfg.reference;
    opts.reference_enabled = cfg.reference_enabled;
    opts.scan_step = cfg.step;
    opts.normalize_delta = cfg.normalize_delta;
    const qes::Report rep = qes::build_report(cfg.model, opts);

    std::ofstream file;
    std::ostream& out = open_output(file, cfg.report_output);
    out << qes::report_to_json(rep).dump(2) << "\n";

    std::cout << "exact: condition " << (rep.exact.condition_satisfied ? "satisfied" : "violated")
              << ", " << rep.exact.energies.size() << " terminating level(s)\n";
    for (const auto& v : rep.variational) {
        std::cout << "variational level " << v.level << " (degree " << v.degree << ", "
                  << v.variant << "): ";
        if (!v.found)
            std::cout << "no physical minimum in window\n";
        else if (v.deviation_available)
            std::cout << "E = " << fmt9(v.E_star) << ", reference " << fmt9(v.E_ref)
                      << ", deviation " << fmt9(v.deviation_percent) << "%\n";
        else
            std::cout << "E = " << fmt9(v.E_star) << " (deviation unavailable)\n";
    }
    for (const auto& v : rep.validation)
        std::cout << "validation: " << v.check << ": " << (v.agreed ? "ok" : "DISCREPANCY")
                  << "\n";
    if (&out != &std::cout) std::cout << "report written to " << cfg.report_output << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quasi-exactly-solvable sextic oscillator toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    CliConfig cfg;
    std::optional<std::string> window_str, out_override;

    app.add_option("--config", config_path, "JSON configuration file");
    app.add_option("--alpha", cfg.model.alpha, "x^2 coupling");
    app.add_option("--beta", cfg.model.beta, "x^4 coupling");
    app.add_option("--gamma", cfg.model.gamma, "x^6 coupling (> 0)");
    app.add_option("--sigma", cfg.model.sigma, "centrifugal coefficient (>= 0)");
    app.add_option("--n", cfg.model.n, "terminating sector degree");
    app.add_option("--parity", cfg.parity, "scan parity: odd | even");
    app.add_option("--degree", cfg.degree, "truncation degree of u");
    auto* wopt = app.add_option("--window", "scan window 'lo,hi'");
    app.add_option("--step", cfg.step, "scan step in E");
    app.add_flag("--normalize-delta", cfg.normalize_delta, "divide Delta by <u,u>_w");
    app.add_option("--grid-L", cfg.reference.L, "reference box half-width");
    app.add_option("--grid-N", cfg.reference.N, "reference interior points");
    app.add_option("--out", "output path override ('-' for stdout)");

    auto* sub_exact = app.add_subcommand("exact", "exact terminating spectrum");
    auto* sub_scan = app.add_subcommand("scan", "Delta(E) scan to a curve file");
    auto* sub_ref = app.add_subcommand("reference", "finite-difference reference spectrum");
    auto* sub_report = app.add_subcommand("report", "full JSON report");
    for (auto* sub : {sub_exact, sub_scan, sub_ref, sub_report}) sub->fallthrough();

    // defaults-first parse order: config file, then flag overrides
    app.callback([&]() {
        if (!config_path.empty()) {
            CliConfig file_cfg;
            apply_json_config(file_cfg, config_path);
            // flags not given on the command line fall back to the file values
            const CliConfig& merged = file_cfg;
            if (app.count("--alpha") == 0) cfg.model.alpha = merged.model.alpha;
            if (app.count("--beta") == 0) cfg.model.beta = merged.model.beta;
            if (app.count("--gamma") == 0) cfg.model.gamma = merged.model.gamma;
            if (app.count("--sigma") == 0) cfg.model.sigma = merged.model.sigma;
            if (app.count("--n") == 0) cfg.model.n = merged.model.n;
            if (app.count("--parity") == 0) cfg.parity = merged.parity;
            if (app.count("--degree") == 0) cfg.degree = merged.degree;
            if (app.count("--window") == 0) {
                cfg.window_lo = merged.window_lo;
                cfg.window_hi = merged.window_hi;
            }
            if (app.count("--step") == 0) cfg.step = merged.step;
            if (app.count("--normalize-delta") == 0) cfg.normalize_delta = merged.normalize_delta;
            if (app.count("--grid-L") == 0) cfg.reference.L = merged.reference.L;
            if (app.count("--grid-N") == 0) cfg.reference.N = merged.reference.N;
            cfg.reference.k_max = merged.reference.k_max;
            cfg.reference.tol = merged.reference.tol;
            cfg.reference.richardson = merged.reference.richardson;
            cfg.reference_enabled = merged.reference_enabled;
            cfg.scan_output = merged.scan_output;
            cfg.reference_output = merged.reference_output;
            cfg.report_output = merged.report_output;
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    } catch (const qes::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }

    try {
        if (wopt->count() > 0) parse_window(wopt->as<std::string>(), cfg.window_lo, cfg.window_hi);
        if (app.count("--out") > 0) {
            const auto path = app.get_option("--out")->as<std::string>();
            cfg.scan_output = path;
            cfg.reference_output = path;
            cfg.report_output = path;
        }
        if (cfg.model.gamma <= 0) throw qes::ConfigError("gamma must be positive");
        if (cfg.model.sigma < 0) throw qes::ConfigError("sigma must be nonnegative");

        if (sub_exact->parsed()) return cmd_exact(cfg);
        if (sub_scan->parsed()) return cmd_scan(cfg);
        if (sub_ref->parsed()) return cmd_reference(cfg);
        if (sub_report->parsed()) return cmd_report(cfg);
        throw qes::ConfigError("no subcommand given");
    } catch (const qes::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCompute;
    }
}
