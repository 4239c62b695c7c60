#include "qes/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "qes/errors.hpp"
#include "qes/quadrature.hpp"

namespace qes {

double round_sig9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return std::strtod(buf, nullptr);
}

std::vector<ValidationEntry> standard_validation_suite(const QesModel& m) {
    std::vector<ValidationEntry> out = validate_quoted_formulas(m);

    // canonical barrier-free n=2 showcase
    const QesModel quartic_free{-7.0, 0.0, 1.0, 0.0, 2};
    if (!(m.n == 2 && m.sigma == 0.0))
        for (auto& e : validate_quoted_formulas(quartic_free)) out.push_back(std::move(e));

    // canonical barrier showcase: s = 1, a = 1 => sigma = 3/4, alpha = -10
    const QesModel barrier{-10.0, 0.0, 1.0, 0.75, 2};
    if (!(m.sigma > 0.0))
        for (auto& e : validate_quoted_formulas(barrier)) out.push_back(std::move(e));

    // moment base constants against quadrature
    {
        const Measure dw = derive_measure(QesModel{});
        const MomentTable t = build_moment_table(dw, 4);
        const auto f = [](double x) { return std::exp(-0.5 * x * x * x * x); };
        const double q = 2.0 * adaptive_simpson(f, 0.0, 12.0, 1e-13);
        const bool ok = std::abs(t.at(0) - q) <= 1e-10 * q;
        char buf[120];
        std::snprintf(buf, sizeof buf, "recurrence %.12g, quadrature %.12g", t.at(0), q);
        out.push_back({"quartic-weight moment M0 (Gamma recurrence vs quadrature)", ok, buf});
    }
    return out;
}

Report build_report(const QesModel& m, const ReportOptions& opts) {
    Report rep;

    // ---- exact sector
    const QesCondition cond = qes_condition(m);
    rep.exact.condition_satisfied = cond.satisfied;
    rep.exact.implied_n = round_sig9(cond.implied_n);
    if (cond.satisfied && m.n % 2 == 0 && m.n >= 0) {
        const ExactSpectrum spec = solve_exact_spectrum(m);
        for (const auto& e : spec.entries) {
            rep.exact.energies.push_back(round_sig9(e.energy));
            rep.exact.energies_exact.push_back(e.energy_exact ? to_string(*e.energy_exact) : "");
            std::vector<double> coeffs;
            for (int k = 0; k <= e.polynomial.degree(); ++k)
                coeffs.push_back(round_sig9(to_double(e.polynomial[k])));
            rep.exact.polynomials.push_back(std::move(coeffs));
            rep.exact.node_counts.push_back(e.node_count);
        }
    }

    // ---- reference spectrum
    rep.reference.enabled = opts.reference_enabled;
    rep.reference.L = opts.reference.L;
    rep.reference.N = opts.reference.N;
    rep.reference.richardson = opts.reference.richardson;
    ReferenceSpectrum ref;
    if (opts.reference_enabled) {
        ref = compute_reference(m, opts.reference);
        for (double e : ref.eigenvalues) rep.reference.eigenvalues.push_back(round_sig9(e));
    }

    // ---- variational entries
    std::vector<VariationalRequest> requests = opts.requests;
    if (requests.empty())
        requests = {{1, 5, -12.0, -4.0}, {1, 9, -12.0, -4.0},
                    {3, 5, 0.0, 6.0},   {3, 9, 0.0, 6.0},
                    {5, 13, 10.0, 18.0}};

    for (const auto& req : requests) {
        ReportVariationalEntry entry;
        entry.level = req.level;
        entry.degree = req.degree;
        const Parity parity = (req.level % 2 == 1) ? Parity::odd : Parity::even;

        const auto locate = [&](bool normalize) -> bool {
            ScanOptions so;
            so.normalize = normalize;
            const auto states = identify_states(m, parity, req.degree, req.window_lo,
                                                req.window_hi, opts.scan_step, so);
            for (const auto& s : states) {
                if (s.level_index != req.level) continue;
                entry.found = true;
                entry.E_star = round_sig9(s.E_star);
                entry.delta_star = round_sig9(s.delta_star);
                entry.nodes = s.level_index;
                return true;
            }
            return false;
        };
        bool ok = locate(opts.normalize_delta);
        entry.variant = opts.normalize_delta ? "normalized" : "raw";
        if (!ok) {
            ok = locate(!opts.normalize_delta);
            if (ok) entry.variant = opts.normalize_delta ? "raw" : "normalized";
        }
        if (entry.found && opts.reference_enabled &&
            req.level < static_cast<int>(ref.eigenvalues.size()) &&
            ref.eigenvalues[req.level] != 0.0) {
            entry.deviation_available = true;
            entry.E_ref = round_sig9(ref.eigenvalues[req.level]);
            entry.deviation_percent = round_sig9(
                100.0 * std::abs(entry.E_star - ref.eigenvalues[req.level]) /
                std::abs(ref.eigenvalues[req.level]));
        }
        rep.variational.push_back(std::move(entry));
    }

    rep.validation = standard_validation_suite(m);
    return rep;
}

// ----------------------------------------------------------------- JSON IO

nlohmann::json report_to_json(const Report& r) {
    nlohmann::json j;
    j["exact"] = {{"condition_satisfied", r.exact.condition_satisfied},
                  {"implied_n", r.exact.implied_n},
                  {"energies", r.exact.energies},
                  {"energies_exact", r.exact.energies_exact},
                  {"polynomials", r.exact.polynomials},
                  {"node_counts", r.exact.node_counts}};
    j["variational"] = nlohmann::json::array();
    for (const auto& v : r.variational)
        j["variational"].push_back({{"level", v.level},
                                    {"degree", v.degree},
                                    {"variant", v.variant},
                                    {"found", v.found},
                                    {"E_star", v.E_star},
                                    {"delta_star", v.delta_star},
                                    {"nodes", v.nodes},
                                    {"deviation_available", v.deviation_available},
                                    {"E_ref", v.E_ref},
                                    {"deviation_percent", v.deviation_percent}});
    j["reference"] = {{"enabled", r.reference.enabled},
                      {"L", r.reference.L},
                      {"N", r.reference.N},
                      {"richardson", r.reference.richardson},
                      {"eigenvalues", r.reference.eigenvalues}};
    j["validation"] = nlohmann::json::array();
    for (const auto& v : r.validation)
        j["validation"].push_back({{"check", v.check}, {"agreed", v.agreed}, {"detail", v.detail}});
    return j;
}

Report report_from_json(const nlohmann::json& j) {
    Report r;
    const auto& e = j.at("exact");
    r.exact.condition_satisfied = e.at("condition_satisfied").get<bool>();
    r.exact.implied_n = e.at("implied_n").get<double>();
    r.exact.energies = e.at("energies").get<std::vector<double>>();
    r.exact.energies_exact = e.at("energies_exact").get<std::vector<std::string>>();
    r.exact.polynomials = e.at("polynomials").get<std::vector<std::vector<double>>>();
    r.exact.node_counts = e.at("node_counts").get<std::vector<int>>();
    for (const auto& v : j.at("variational")) {
        ReportVariationalEntry x;
        x.level = v.at("level").get<int>();
        x.degree = v.at("degree").get<int>();
        x.variant = v.at("variant").get<std::string>();
        x.found = v.at("found").get<bool>();
        x.E_star = v.at("E_star").get<double>();
        x.delta_star = v.at("delta_star").get<double>();
        x.nodes = v.at("nodes").get<int>();
        x.deviation_available = v.at("deviation_available").get<bool>();
        x.E_ref = v.at("E_ref").get<double>();
        x.deviation_percent = v.at("deviation_percent").get<double>();
        r.variational.push_back(std::move(x));
    }
    const auto& f = j.at("reference");
    r.reference.enabled = f.at("enabled").get<bool>();
    r.reference.L = f.at("L").get<double>();
    r.reference.N = f.at("N").get<int>();
    r.reference.richardson = f.at("richardson").get<bool>();
    r.reference.eigenvalues = f.at("eigenvalues").get<std::vector<double>>();
    for (const auto& v : j.at("validation")) {
        ValidationEntry x;
        x.check = v.at("check").get<std::string>();
        x.agreed = v.at("agreed").get<bool>();
        x.detail = v.at("detail").get<std::string>();
        r.validation.push_back(std::move(x));
    }
    return r;
}

}  // namespace qes
