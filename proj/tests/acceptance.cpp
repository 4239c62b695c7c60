// Acceptance suite: one check per numbered criterion, each printing a single
// PASS/FAIL line. Run all by default, or a single one with --criterion <k>.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qes/errors.hpp"
#include "qes/report.hpp"

using namespace qes;

namespace {

const QesModel kDoubleWell{-11.0, 0.0, 1.0, 0.0, 4};
const QesModel kQuarticFree{-7.0, 0.0, 1.0, 0.0, 2};
const QesModel kBarrier{-10.0, 0.0, 1.0, 0.75, 2};

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v) {
    char b[40];
    std::snprintf(b, sizeof b, "%.6g", v);
    return b;
}

// ---------------------------------------------------------------- criteria

Outcome c1_exact_spectrum() {
    const ExactSpectrum spec = solve_exact_spectrum(kDoubleWell);
    if (spec.entries.size() != 3) return {false, "expected 3 terminating levels"};

    // termination cubic proportional to E(E^2 - 64), exact comparison
    const EnergyPoly target{Rational(0), Rational(-64), Rational(0), Rational(1)};
    const EnergyPoly& t = spec.termination;
    if (t.degree() != 3 || t.scaled(1 / t.leading()) != target)
        return {false, "termination polynomial is not proportional to E(E^2-64)"};

    const Rational expected_e[3] = {Rational(-8), Rational(0), Rational(8)};
    const Poly expected_p[3] = {
        Poly{Rational(1), Rational(0), Rational(4), Rational(0), Rational(2)},
        Poly{Rational(1), Rational(0), Rational(0), Rational(0), Rational(-2, 3)},
        Poly{Rational(1), Rational(0), Rational(-4), Rational(0), Rational(2)}};
    for (int i = 0; i < 3; ++i) {
        if (!spec.entries[i].energy_exact || *spec.entries[i].energy_exact != expected_e[i])
            return {false, "energy " + std::to_string(i) + " is not the exact rational value"};
        if (spec.entries[i].polynomial != expected_p[i])
            return {false, "polynomial " + std::to_string(i) + " differs from the closed form"};
    }
    return {true, "termination cubic prop. to E(E^2-64); energies {-8, 0, 8} and all three "
                  "polynomials exact"};
}

Outcome c2_odd_series() {
    const EulerOperator op = build_euler_operator(kDoubleWell);
    const XSeries s = generate_series(op, Rational(1), 4);
    auto frac = [](long num, long den) { return Rational(num) / Rational(den); };
    const EnergyPoly expected[5] = {
        Poly{Rational(1)},
        Poly{Rational(0), frac(-1, 6)},
        Poly{frac(-36, 120), Rational(0), frac(1, 120)},
        Poly{Rational(0), frac(76, 5040), Rational(0), frac(-1, 5040)},
        Poly{frac(-3024, 362880), Rational(0), frac(8, 362880), Rational(0), frac(1, 362880)}};
    for (int k = 0; k <= 4; ++k)
        if (s.coeffs[k] != expected[k])
            return {false, "coefficient of x^{1+2*" + std::to_string(k) + "} differs"};
    return {true, "five series coefficients {1, -E/3!, (E^2-36)/5!, (76E-E^3)/7!, "
                  "(E^4+8E^2-3024)/9!} reproduced exactly"};
}

Outcome c3_reference_table1() {
    const ReferenceSpectrum spec = compute_reference(kDoubleWell, {5.0, 4000, 6, 1e-10, true});
    const double d1 = std::abs(spec.eigenvalues[1] - (-7.917350));
    const double d3 = std::abs(spec.eigenvalues[3] - 2.520359);
    const double d5 = std::abs(spec.eigenvalues[5] - 14.112964);
    const bool ok = d1 <= 1e-4 && d3 <= 1e-4 && d5 <= 1e-4;
    return {ok, "|dE1| = " + fmt(d1) + ", |dE3| = " + fmt(d3) + ", |dE5| = " + fmt(d5) +
                    " (tolerance 1e-4)"};
}

Outcome c4_reference_table2() {
    const double tabulated[14] = {21.1575028,  28.9747742,  37.4938424,  46.6606249,
                                56.4324169,  66.7742029,  77.6565110,  89.0540515,
                                100.9447956, 113.3093212, 126.1303320, 139.3922937,
                                153.0811528, 167.1841151};
    const ReferenceSpectrum spec = compute_reference(kDoubleWell, {5.0, 4000, 20, 1e-10, true});
    double worst = 0.0;
    int worst_k = 6;
    for (int k = 6; k <= 19; ++k) {
        const double d = std::abs(spec.eigenvalues[k] - tabulated[k - 6]);
        if (d > worst) {
            worst = d;
            worst_k = k;
        }
    }
    return {worst <= 1e-3, "levels 6-19 vs tabulated values: worst |dE| = " + fmt(worst) +
                               " at level " + std::to_string(worst_k) + " (tolerance 1e-3)"};
}

struct LevelProbe {
    bool found = false;
    double E = 0.0;
    std::string variant = "raw";
};

LevelProbe locate_level(int level, int degree, double lo, double hi) {
    LevelProbe probe;
    const Parity parity = (level % 2 == 1) ? Parity::odd : Parity::even;
    for (const bool normalize : {false, true}) {
        for (const auto& s :
             identify_states(kDoubleWell, parity, degree, lo, hi, 0.01, {normalize, 1e-8})) {
            if (s.level_index != level) continue;
            probe.found = true;
            probe.E = s.E_star;
            probe.variant = normalize ? "normalized" : "raw";
            return probe;
        }
    }
    return probe;
}

Outcome c5_table1_variational() {
    struct Row {
        int level, degree;
        double lo, hi, tabulated, tol;
    };
    const Row rows[4] = {{1, 5, -12.0, -4.0, -7.913704, 5e-3},
                         {1, 9, -12.0, -4.0, -7.916400, 5e-3},
                         {3, 9, 0.0, 6.0, 2.549348, 5e-3},
                         {5, 13, 10.0, 18.0, 13.403590, 2e-2}};
    bool all = true;
    std::ostringstream detail;
    for (const Row& r : rows) {
        const LevelProbe p = locate_level(r.level, r.degree, r.lo, r.hi);
        if (!p.found) {
            all = false;
            detail << "level " << r.level << " deg " << r.degree
                   << ": no physical minimum in window under raw or normalized Delta; ";
            continue;
        }
        const double d = std::abs(p.E - r.tabulated);
        if (d > r.tol) all = false;
        detail << "level " << r.level << " deg " << r.degree << " (" << p.variant
               << "): E = " << fmt(p.E) << ", |dE| = " << fmt(d) << (d <= r.tol ? " ok; " : " MISS; ");
    }
    return {all, detail.str()};
}

Outcome c6_accuracy_ordering() {
    const ReferenceSpectrum ref = compute_reference(kDoubleWell, {5.0, 4000, 2, 1e-10, true});
    const double e1_ref = ref.eigenvalues[1];

    const LevelProbe p5 = locate_level(1, 5, -12.0, -4.0);
    const LevelProbe p9 = locate_level(1, 9, -12.0, -4.0);
    if (!p5.found || !p9.found) return {false, "level-1 minimum missing"};

    const double err5 = std::abs(p5.E - e1_ref), err9 = std::abs(p9.E - e1_ref);
    const bool energy_ok = err9 < err5;

    // both refined minima are exact zeros, so the curve floor is compared at
    // the sampled resolution of the Delta data
    const TruncatedState s5 = make_truncated_state(kDoubleWell, Parity::odd, 5);
    const TruncatedState s9 = make_truncated_state(kDoubleWell, Parity::odd, 9);
    double floor5 = 1e300, floor9 = 1e300;
    for (const auto& s : scan_delta(s5, -12.0, -4.0, 0.01).samples)
        floor5 = std::min(floor5, s.delta);
    for (const auto& s : scan_delta(s9, -12.0, -4.0, 0.01).samples)
        floor9 = std::min(floor9, s.delta);
    const bool delta_ok = floor9 < floor5;

    return {energy_ok && delta_ok,
            "|E1(deg9)-ref| = " + fmt(err9) + " < |E1(deg5)-ref| = " + fmt(err5) +
                (energy_ok ? " ok" : " MISS") + "; sampled min-Delta deg9 = " + fmt(floor9) +
                " < deg5 = " + fmt(floor5) + (delta_ok ? " ok" : " MISS")};
}

Outcome c7_higher_states() {
    const ReferenceSpectrum ref = compute_reference(kDoubleWell, {5.0, 4000, 12, 1e-10, true});
    struct Scan {
        Parity parity;
        int degree;
        double lo, hi;
    };
    const Scan scans[2] = {{Parity::odd, 9, -12.0, 6.0}, {Parity::even, 12, -10.0, 12.0}};
    bool all = true;
    std::ostringstream detail;
    for (const Scan& sc : scans) {
        const auto states =
            identify_states(kDoubleWell, sc.parity, sc.degree, sc.lo, sc.hi, 0.01, {});
        const int par = sc.parity == Parity::odd ? 1 : 0;
        for (int k = par; k < 12; k += 2) {
            const double e_ref = ref.eigenvalues[k];
            if (e_ref >= 60.0 || e_ref < sc.lo || e_ref > sc.hi) continue;
            bool found = false;
            for (const auto& s : states) {
                if (s.level_index != k) continue;
                found = true;
                const double rel = std::abs(e_ref) > 1e-8
                                       ? std::abs(s.E_star - e_ref) / std::abs(e_ref)
                                       : std::abs(s.E_star);
                const bool ok = rel <= 0.05;
                all = all && ok;
                detail << "level " << k << ": E = " << fmt(s.E_star) << " vs ref " << fmt(e_ref)
                       << " (" << fmt(100.0 * rel) << "%)" << (ok ? "; " : " MISS; ");
            }
            if (!found) {
                all = false;
                detail << "level " << k << ": no physical minimum; ";
            }
        }
    }
    return {all, detail.str()};
}

Outcome c8_oracle_suite() {
    // (i) moment contraction vs quadrature on 100 randomized instances
    std::mt19937 rng(424242);
    std::uniform_real_distribution<double> energy(-20.0, 20.0);
    const int odd_degrees[] = {5, 7, 9, 11};
    const int even_degrees[] = {4, 6, 8, 10, 12};
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const bool odd = i % 2 == 0;
        const int degree = odd ? odd_degrees[(i / 2) % 4] : even_degrees[(i / 2) % 5];
        const TruncatedState st =
            make_truncated_state(kDoubleWell, odd ? Parity::odd : Parity::even, degree);
        const double E = energy(rng);
        const double a = residual_inner_product(st, E);
        const double b = residual_inner_product_quadrature(st, E, 1e-11);
        worst = std::max(worst, std::abs(a - b) / std::max({a, b, 1e-6}));
    }
    if (worst > 1e-8)
        return {false, "moment vs quadrature relative disagreement " + fmt(worst)};

    // (ii) exact eigenpairs annihilate the residual exactly
    const TruncatedState st12 = make_truncated_state(kDoubleWell, Parity::even, 12);
    for (const double e : {-8.0, 0.0, 8.0})
        if (residual_signed(st12, e) != 0.0)
            return {false, "Delta at the exact eigenvalue " + fmt(e) + " is not exactly zero"};

    // (iii) factor propagation through order 10
    const XSeries s = generate_series(build_euler_operator(kDoubleWell), Rational(0), 10);
    for (const Rational root : {Rational(-8), Rational(0), Rational(8)})
        for (int k = 3; k <= 10; ++k)
            if (s.coeffs[k].eval(root) != 0)
                return {false, "series coefficient " + std::to_string(k) +
                                   " does not vanish at an exact QES energy"};

    return {true, "100/100 moment-vs-quadrature within 1e-8 (worst " + fmt(worst) +
                      "); Delta(exact pair) = 0 exactly; factor propagation exact to k = 10"};
}

Outcome c9_closed_forms() {
    bool energies_ok = true;
    std::ostringstream detail;
    int logged_discrepancies = 0;
    for (const QesModel& m : {kQuarticFree, kBarrier}) {
        for (const auto& v : validate_quoted_formulas(m)) {
            if (v.check.find("closed form") != std::string::npos ||
                v.check.find("closed-form") != std::string::npos) {
                energies_ok = energies_ok && v.agreed;
                detail << v.check << (v.agreed ? " ok; " : " MISS; ");
            } else if (!v.agreed) {
                ++logged_discrepancies;  // quoted-formula discrepancies are logged, not hidden
            }
        }
    }
    detail << logged_discrepancies << " quoted-formula discrepancy(ies) logged";
    return {energies_ok, detail.str()};
}

Outcome c10_node_structure() {
    const ExactSpectrum spec = solve_exact_spectrum(kDoubleWell);
    if (spec.entries.size() != 3 || spec.entries[0].node_count != 0 ||
        spec.entries[1].node_count != 2 || spec.entries[2].node_count != 4)
        return {false, "exact node counts are not {0, 2, 4}"};

    const LevelProbe p9 = locate_level(1, 9, -12.0, -4.0);
    if (!p9.found) return {false, "variational first excited state not located"};
    const TruncatedState st = make_truncated_state(kDoubleWell, Parity::odd, 9);
    const NodeCheck nc = node_filter(st, p9.E, 1);
    if (!nc.pass)
        return {false, "first excited state has " + std::to_string(nc.nodes) + " nodes"};
    return {true, "exact nodes {0, 2, 4}; variational first excited state has exactly 1 node"};
}

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    double time_limit_s;  // 0 = none
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> cs = {
        {1, "exact QES spectrum of the double well", c1_exact_spectrum, 1.0},
        {2, "odd-series symbolic coefficients", c2_odd_series, 0.0},
        {3, "reference solver vs tabulated levels 1/3/5", c3_reference_table1, 30.0},
        {4, "reference solver vs tabulated levels 6-19", c4_reference_table2, 0.0},
        {5, "variational reproduction of the tabulated approximations", c5_table1_variational, 60.0},
        {6, "accuracy ordering between degree 5 and degree 9", c6_accuracy_ordering, 0.0},
        {7, "higher states within 5% of the reference", c7_higher_states, 0.0},
        {8, "oracle-equivalence property suite", c8_oracle_suite, 0.0},
        {9, "closed-form energy cross-checks", c9_closed_forms, 0.0},
        {10, "node structure of exact and variational states", c10_node_structure, 0.0},
    };
    return cs;
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[i + 1]);

    int failures = 0;
    for (const auto& c : criteria()) {
        if (only != 0 && c.id != only) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.time_limit_s > 0.0 && secs > c.time_limit_s) {
            out.pass = false;
            out.detail += " [exceeded " + fmt(c.time_limit_s) + " s budget]";
        }
        std::printf("[%s] criterion %d: %s — %s [%.2f s]\n", out.pass ? "PASS" : "FAIL", c.id,
                    c.name, out.detail.c_str(), secs);
        if (!out.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
