#pragma once

#include <string>
#include <vector>

#include "qes/model.hpp"
#include "qes/reference.hpp"
#include "qes/variational.hpp"

#include "json.hpp"

namespace qes {

// Machine-readable run summary: the exact sector, the variational minima
// with deviations against the reference solver, the reference spectrum, and
// the quoted-formula cross-check log. All floating-point fields are rounded
// to 9 significant digits before serialization so a dump/parse cycle is the
// identity.
struct ReportExact {
    bool condition_satisfied = false;
    double implied_n = 0.0;
    std::vector<double> energies;
    std::vector<std::string> energies_exact;  // "" when the root is not rational
    std::vector<std::vector<double>> polynomials;
    std::vector<int> node_counts;
    bool operator==(const ReportExact&) const = default;
};

struct ReportVariationalEntry {
    int level = 0;
    int degree = 0;
    std::string variant;  // "raw" or "normalized"
    bool found = false;
    double E_star = 0.0;
    double delta_star = 0.0;
    int nodes = 0;
    bool deviation_available = false;
    double E_ref = 0.0;
    double deviation_percent = 0.0;  // 100 |E_star - E_ref| / |E_ref|
    bool operator==(const ReportVariationalEntry&) const = default;
};

struct ReportReference {
    bool enabled = true;
    double L = 5.0;
    int N = 4000;
    bool richardson = true;
    std::vector<double> eigenvalues;
    bool operator==(const ReportReference&) const = default;
};

struct Report {
    ReportExact exact;
    std::vector<ReportVariationalEntry> variational;
    ReportReference reference;
    std::vector<ValidationEntry> validation;
    bool operator==(const Report&) const = default;
};

struct VariationalRequest {
    int level = 1;
    int degree = 9;
    double window_lo = -12.0;
    double window_hi = -4.0;
};

struct ReportOptions {
    ReferenceOptions reference;
    bool reference_enabled = true;
    double scan_step = 0.01;
    bool normalize_delta = false;  // raw first; normalized retried when raw finds nothing
    std::vector<VariationalRequest> requests;  // empty -> the standard level 1/3/5 set
};

double round_sig9(double v);

Report build_report(const QesModel& m, const ReportOptions& opts = {});

nlohmann::json report_to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);

// Printed-formula checks for the model plus the canonical n=2 showcases.
std::vector<ValidationEntry> standard_validation_suite(const QesModel& m);

}  // namespace qes
