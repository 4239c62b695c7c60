#include "qes/variational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qes/errors.hpp"
#include "qes/quadrature.hpp"

namespace qes {

double gamma_quarter() { return 3.6256099082219083119; }
double gamma_half() { return 1.7724538509055160273; }
double gamma_three_quarter() { return 1.2254167024651776451; }

// ------------------------------------------------------------ moment table

double MomentTable::at(int m) const {
    if (m < 0 || 2 * m > max_integrand_degree)
        throw MomentOverflowError("moment x^" + std::to_string(2 * m) +
                                  " beyond table capacity (degree " +
                                  std::to_string(max_integrand_degree) + ")");
    return moments[m];
}

MomentTable build_moment_table(const Measure& measure, int max_degree) {
    if (measure.quart_coeff() <= 0.0)
        throw UnsupportedModelError("normalizable measure requires a positive quartic exponent");
    MomentTable t;
    t.power_4l = 4.0 * measure.l;
    t.two_gauss = 2.0 * measure.gauss_coeff();
    t.two_quart = 2.0 * measure.quart_coeff();
    t.max_integrand_degree = std::max(max_degree, 0);
    const int count = t.max_integrand_degree / 2 + 1;
    t.moments.resize(count);

    if (t.two_gauss == 0.0 && t.power_4l == 0.0) {
        // integral x^{2m} e^{-c x^4} dx = c^{-(2m+1)/4} Gamma((2m+1)/4) / 2,
        // with the Gamma values built by the recurrence Gamma(z+1) = z Gamma(z)
        // from the quarter-integer base constants.
        const double c = t.two_quart;
        double g14 = gamma_quarter();        // Gamma(1/4 + t), even m = 2t
        double g34 = gamma_three_quarter();  // Gamma(3/4 + t), odd m = 2t + 1
        for (int m = 0; m < count; ++m) {
            const double z = (2.0 * m + 1.0) / 4.0;
            const double g = (m % 2 == 0) ? g14 : g34;
            t.moments[m] = 0.5 * std::pow(c, -z) * g;
            if (m % 2 == 0)
                g14 *= z;
            else
                g34 *= z;
        }
        return t;
    }

    for (int m = 0; m < count; ++m) {
        const double p = 2.0 * m + t.power_4l;
        const auto f = [&](double x) {
            const double pw = (x == 0.0) ? (p == 0.0 ? 1.0 : 0.0) : std::pow(x, p);
            return pw * std::exp(-(t.two_gauss * x * x + t.two_quart * x * x * x * x));
        };
        double peak = 0.0;
        for (double x = 0.0; x <= 4.0; x += 0.125) peak = std::max(peak, f(x));
        const double L = decay_cutoff(f, 2.0, peak * 1e-18);
        t.moments[m] = 2.0 * adaptive_simpson(f, 0.0, L, peak * L * 1e-13);
        if (!std::isfinite(t.moments[m]) || t.moments[m] <= 0.0)
            throw Error("moment integration failed for x^" + std::to_string(2 * m));
    }
    return t;
}

// --------------------------------------------------------- truncated state

TruncatedState make_truncated_state(const QesModel& m, Parity parity, int degree) {
    const int lam = parity == Parity::odd ? 1 : 0;
    if (degree < lam || (degree - lam) % 2 != 0)
        throw Error("truncation degree " + std::to_string(degree) +
                    " is inconsistent with the requested parity");
    TruncatedState st;
    st.parity = parity;
    st.degree = degree;
    st.model = m;
    st.measure = derive_measure(m);
    st.op = build_euler_operator(m);
    st.u_of_E = generate_series(st.op, Rational(lam), (degree - lam) / 2);
    st.table = std::make_shared<MomentTable>(
        build_moment_table(st.measure, 2 * degree + 6));
    return st;
}

namespace {

Rational shifted_energy(const TruncatedState& st, double E) {
    const Rational shift =
        rational_from_double(st.model.beta) / (2 * sqrt_gamma_rational(st.model));
    return rational_from_double(E) - shift;
}

struct Contraction {
    std::vector<Rational> u;  // index k: coefficient of x^{lambda + 2k}
    std::vector<Rational> r;  // index j: coefficient of x^{lambda + 2j}
};

// Exact instantiation of u and of the residual (H~ - E) u at one energy.
// The residual is recovered from the Euler form: [F(D) + P] u = -x^2 (H~ - E) u.
Contraction instantiate_at(const TruncatedState& st, const Rational& e_shifted) {
    const int lam = st.lambda();
    const int K = st.top_index();
    Contraction c;
    c.u.resize(K + 1);
    for (int k = 0; k <= K; ++k) c.u[k] = st.u_of_E.coeffs[k].eval(e_shifted);

    Poly u_poly;
    for (int k = 0; k <= K; ++k)
        if (c.u[k] != 0) u_poly = u_poly + Poly::monomial(lam + 2 * k, c.u[k]);

    const Poly euler_form = apply_operator(st.op, u_poly, e_shifted);
    const Poly r_poly = euler_form.is_zero() ? Poly{} : (-euler_form).shifted_down(2);

    c.r.assign(K + 3, Rational(0));
    for (int p = 0; p <= r_poly.degree(); ++p) {
        if (r_poly[p] == 0) continue;
        const int j = (p - lam) / 2;
        c.r[j] = r_poly[p];
    }
    return c;
}

double contract(const TruncatedState& st, const std::vector<Rational>& a,
                const std::vector<Rational>& b) {
    const int lam = st.lambda();
    double acc = 0.0;
    for (size_t k = 0; k < a.size(); ++k) {
        if (a[k] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (b[j] == 0) continue;
            acc += to_double(a[k] * b[j]) * st.table->at(lam + static_cast<int>(k + j));
        }
    }
    return acc;
}

}  // namespace

double residual_signed(const TruncatedState& st, double E) {
    if (!std::isfinite(E)) throw Error("residual: energy must be finite");
    const Contraction c = instantiate_at(st, shifted_energy(st, E));
    return contract(st, c.u, c.r);
}

double residual_inner_product(const TruncatedState& st, double E) {
    return std::abs(residual_signed(st, E));
}

double weighted_norm(const TruncatedState& st, double E) {
    const Contraction c = instantiate_at(st, shifted_energy(st, E));
    return contract(st, c.u, c.u);
}

double residual_inner_product_quadrature(const TruncatedState& st, double E, double rel_tol) {
    // Double-precision path, assembled directly from the transformed
    // Hamiltonian rather than the Euler form.
    const int lam = st.lambda();
    const int K = st.top_index();
    const Rational es = shifted_energy(st, E);
    std::vector<double> u(st.degree + 1, 0.0);
    for (int k = 0; k <= K; ++k) u[lam + 2 * k] = to_double(st.u_of_E.coeffs[k].eval(es));

    auto deriv = [](const std::vector<double>& p) {
        std::vector<double> d(p.size() > 1 ? p.size() - 1 : 0, 0.0);
        for (size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<double>(i);
        return d;
    };
    auto shift_up = [](const std::vector<double>& p, int s) {
        std::vector<double> q(p.size() + s, 0.0);
        for (size_t i = 0; i < p.size(); ++i) q[i + s] = p[i];
        return q;
    };
    auto add_to = [](std::vector<double>& a, const std::vector<double>& b, double w) {
        if (a.size() < b.size()) a.resize(b.size(), 0.0);
        for (size_t i = 0; i < b.size(); ++i) a[i] += w * b[i];
    };

    const double sg = std::sqrt(st.model.gamma);
    const std::vector<double> du = deriv(u);
    const std::vector<double> ddu = deriv(du);
    std::vector<double> r;
    add_to(r, ddu, -1.0);
    add_to(r, shift_up(du, 3), 2.0 * sg);
    if (st.measure.barrier) {
        // -(4l/x) du: du has no constant term for lambda = 0 series with l > 0
        std::vector<double> du_over_x(du.begin() + (du.empty() ? 0 : 1), du.end());
        if (!du.empty() && du[0] != 0.0)
            throw Error("quadrature residual: unexpected 1/x singularity");
        add_to(r, du_over_x, -4.0 * st.measure.l);
        add_to(r, shift_up(u, 2), st.model.alpha + (4.0 * st.measure.l + 3.0) * sg);
        add_to(r, u, -E);
    } else {
        const double a = st.measure.a;
        add_to(r, shift_up(du, 1), 4.0 * a);
        add_to(r, shift_up(u, 2), st.model.alpha - 4.0 * a * a + 3.0 * sg);
        add_to(r, u, 2.0 * a - E);
    }

    auto horner = [](const std::vector<double>& p, double x) {
        double acc = 0.0;
        for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
        return acc;
    };
    const double four_l = 4.0 * st.measure.l;
    const double tg = 2.0 * st.measure.gauss_coeff(), tq = 2.0 * st.measure.quart_coeff();
    const auto f = [&](double x) {
        const double pw = (four_l == 0.0) ? 1.0 : (x == 0.0 ? 0.0 : std::pow(x, four_l));
        return pw * std::exp(-(tg * x * x + tq * x * x * x * x)) * horner(u, x) * horner(r, x);
    };
    double scale = 0.0;
    for (double x = 0.0; x <= 4.0; x += 0.0625) scale = std::max(scale, std::abs(f(x)));
    if (scale == 0.0) return 0.0;
    const double L = decay_cutoff([&](double x) { return std::abs(f(x)); }, 2.0, scale * 1e-18);
    return std::abs(2.0 * adaptive_simpson(f, 0.0, L, scale * L * rel_tol));
}

// ------------------------------------------------------------------- scans

NodeCheck node_filter(const TruncatedState& st, double E, int expected_nodes) {
    if (!std::isfinite(E)) throw Error("node_filter: energy must be finite");
    const Rational es = rationalize(E, 1e-12) -
                        rational_from_double(st.model.beta) / (2 * sqrt_gamma_rational(st.model));
    const int lam = st.lambda();
    Poly u_poly;
    for (int k = 0; k <= st.top_index(); ++k) {
        const Rational v = st.u_of_E.coeffs[k].eval(es);
        if (v != 0) u_poly = u_poly + Poly::monomial(lam + 2 * k, v);
    }
    NodeCheck out;
    const Rational bound = cauchy_root_bound(u_poly);
    out.nodes = sturm_count(u_poly, -bound, bound);
    out.pass = out.nodes == expected_nodes;
    return out;
}

namespace {

// Candidate energies refined by bisection sit within ~1e-10 of an exact QES
// root; snapping to the rational value (verified by exact annihilation of the
// residual polynomial) removes the tiny series tail whose far-field roots
// would otherwise contaminate the node count.
std::optional<Rational> exact_energy_snap(const TruncatedState& st, double E) {
    for (const double tol : {1e-14, 1e-12, 1e-10, 1e-8, 1e-6}) {
        const Rational cand = rationalize(E, tol);
        const Contraction c = instantiate_at(st, cand - rational_from_double(st.model.beta) /
                                                      (2 * sqrt_gamma_rational(st.model)));
        bool zero = true;
        for (const auto& rc : c.r) zero = zero && rc == 0;
        if (zero) return cand;
    }
    return std::nullopt;
}

double golden_minimize(const std::function<double(double)>& f, double a, double b,
                       double width_tol) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    while (d - c > width_tol) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

double bisect_zero(const std::function<double(double)>& f, double a, double b,
                   double width_tol) {
    double fa = f(a);
    while (b - a > width_tol) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fa * fm <= 0.0)
            b = m;
        else {
            a = m;
            fa = fm;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

DeltaCurve scan_delta(const TruncatedState& st, double lo, double hi, double step,
                      const ScanOptions& opts) {
    if (!(lo < hi)) throw EmptyWindowError("scan window is empty");
    if (step <= 0.0) throw Error("scan step must be positive");

    DeltaCurve curve;
    curve.normalized = opts.normalize;

    const auto signed_value = [&](double E) { return residual_signed(st, E); };
    const auto delta_value = [&](double E) {
        const double v = std::abs(residual_signed(st, E));
        return opts.normalize ? v / weighted_norm(st, E) : v;
    };

    std::vector<double> es, iv, dv;
    const auto count = static_cast<size_t>(std::floor((hi - lo) / step + 0.5)) + 1;
    for (size_t i = 0; i < count; ++i) {
        const double E = lo + static_cast<double>(i) * step;
        if (E > hi + step * 0.5) break;
        const double s = signed_value(E);
        const double d = opts.normalize ? std::abs(s) / weighted_norm(st, E) : std::abs(s);
        es.push_back(E);
        iv.push_back(s);
        dv.push_back(d);
        curve.samples.push_back({E, d});
    }

    // lazily built next-higher truncation for separating tied zero crossings
    std::shared_ptr<TruncatedState> next;
    const auto convergence_badge = [&](double E) {
        if (!next)
            next = std::make_shared<TruncatedState>(
                make_truncated_state(st.model, st.parity, st.degree + 2));
        return residual_inner_product(*next, E) / weighted_norm(*next, E);
    };

    struct Candidate {
        DeltaMinimum min;
        double badge = -1.0;
    };
    std::vector<Candidate> cands;

    for (size_t i = 0; i + 1 < es.size(); ++i) {
        if (iv[i] * iv[i + 1] < 0.0) {
            double z = bisect_zero(signed_value, es[i], es[i + 1],
                                   std::min(opts.refine_tol, 1e-12));
            if (const auto snap = exact_energy_snap(st, z)) z = to_double(*snap);
            cands.push_back({{z, 0.0, 0, false, true}, -1.0});
        } else if (i > 0 && dv[i] < dv[i - 1] && dv[i] < dv[i + 1]) {
            double z = golden_minimize(delta_value, es[i - 1], es[i + 1],
                                       opts.refine_tol * 0.1);
            bool is_zero = false;
            if (const auto snap = exact_energy_snap(st, z)) {
                z = to_double(*snap);
                is_zero = true;  // an exact root sitting on a sample point
            }
            cands.push_back({{z, is_zero ? 0.0 : delta_value(z), 0, false, is_zero}, -1.0});
        }
    }

    for (auto& c : cands) c.min.node_count = node_filter(st, c.min.E_star, 0).nodes;

    // group by node count; within a group the physical candidate has the
    // smaller Delta, with exact-zero ties separated by the next-order residual
    std::vector<int> winners;
    for (size_t i = 0; i < cands.size(); ++i) {
        int best = -1;
        for (size_t j = 0; j < cands.size(); ++j) {
            if (cands[j].min.node_count != cands[i].min.node_count) continue;
            if (best < 0) {
                best = static_cast<int>(j);
                continue;
            }
            auto& a = cands[j];
            auto& b = cands[best];
            const double scale = 1e-9 * (1.0 + std::max(a.min.delta_star, b.min.delta_star));
            if (std::abs(a.min.delta_star - b.min.delta_star) > scale) {
                if (a.min.delta_star < b.min.delta_star) best = static_cast<int>(j);
            } else {
                if (a.badge < 0.0) a.badge = convergence_badge(a.min.E_star);
                if (b.badge < 0.0) b.badge = convergence_badge(b.min.E_star);
                if (a.badge < b.badge) best = static_cast<int>(j);
            }
        }
        if (best == static_cast<int>(i)) winners.push_back(best);
    }

    // cross-group consistency: node counts of physical minima must be
    // nondecreasing in E; conflicting pairs keep the better-converged one
    std::sort(winners.begin(), winners.end(), [&](int a, int b) {
        return cands[a].min.E_star < cands[b].min.E_star;
    });
    std::vector<bool> keep(cands.size(), false);
    std::vector<int> kept;
    for (int w : winners) {
        bool ok = true;
        while (!kept.empty() && cands[w].min.node_count < cands[kept.back()].min.node_count) {
            auto& a = cands[w];
            auto& b = cands[kept.back()];
            if (a.badge < 0.0) a.badge = convergence_badge(a.min.E_star);
            if (b.badge < 0.0) b.badge = convergence_badge(b.min.E_star);
            if (a.badge < b.badge) {
                kept.pop_back();  // the earlier state loses
            } else {
                ok = false;
                break;
            }
        }
        if (ok) kept.push_back(w);
    }
    for (int w : kept) keep[w] = true;

    for (size_t i = 0; i < cands.size(); ++i) {
        cands[i].min.physical = keep[i];
        curve.minima.push_back(cands[i].min);
    }
    std::sort(curve.minima.begin(), curve.minima.end(),
              [](const DeltaMinimum& a, const DeltaMinimum& b) { return a.E_star < b.E_star; });
    return curve;
}

std::vector<IdentifiedState> identify_states(const QesModel& m, Parity parity, int degree,
                                             double lo, double hi, double step,
                                             const ScanOptions& opts) {
    const TruncatedState st = make_truncated_state(m, parity, degree);
    const DeltaCurve curve = scan_delta(st, lo, hi, step, opts);
    std::vector<IdentifiedState> out;
    for (const auto& mn : curve.minima)
        if (mn.physical) out.push_back({mn.node_count, mn.E_star, mn.delta_star});
    std::sort(out.begin(), out.end(),
              [](const IdentifiedState& a, const IdentifiedState& b) { return a.E_star < b.E_star; });
    return out;
}

}  // namespace qes
