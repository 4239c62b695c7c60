#include "qes/euler.hpp"

#include <algorithm>
#include <numeric>

#include "qes/errors.hpp"

namespace qes {

namespace {

void check_operator(const EulerOperator& op) {
    if (op.f_of_d.is_zero()) throw Error("EulerOperator: F(D) must be nonzero");
    for (const auto& t : op.terms) {
        if (t.d_power != 0 && t.d_power != 1)
            throw Error("EulerOperator: d_power must be 0 or 1");
        if (t.degree_raise() <= 0)
            throw Error("EulerOperator: every term must strictly raise the x-degree");
    }
}

int grading_step(const EulerOperator& op) {
    int g = 0;
    for (const auto& t : op.terms) g = std::gcd(g, t.degree_raise());
    return g == 0 ? 1 : g;
}

}  // namespace

std::vector<Rational> indicial_roots(const EulerOperator& op) {
    check_operator(op);
    const auto intervals = isolate_real_roots(op.f_of_d);
    std::vector<Rational> roots;
    for (const auto& iv : intervals) {
        const double approx = refine_root(op.f_of_d, iv);
        const auto exact = exact_rational_root(op.f_of_d, iv, approx);
        if (!exact)
            throw IrrationalIndicialRootError(
                "indicial equation has an irrational root near " + std::to_string(approx));
        roots.push_back(*exact);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

XSeries generate_series(const EulerOperator& op, const Rational& lambda, int order) {
    check_operator(op);
    if (order < 0) throw Error("generate_series: order must be nonnegative");
    if (op.f_of_d.eval(lambda) != 0)
        throw Error("generate_series: lambda is not an indicial root");

    const int step = grading_step(op);
    XSeries s;
    s.indicial_root = lambda;
    s.step = step;
    s.truncation_order = order;
    s.coeffs.assign(order + 1, EnergyPoly{});
    s.coeffs[0] = Poly::constant(Rational(1));

    for (int k = 1; k <= order; ++k) {
        EnergyPoly acc;
        for (const auto& t : op.terms) {
            const int raise = t.degree_raise();
            if (raise % step != 0) continue;  // cannot land on the grading lattice
            const int i = k - raise / step;
            if (i < 0) continue;
            const Rational src_power = lambda + Rational(i * step);
            EnergyPoly contrib = t.coefficient * s.coeffs[i];
            if (t.d_power == 1) contrib = contrib.scaled(src_power);
            acc = acc + contrib;
        }
        const Rational divisor = op.f_of_d.eval(lambda + Rational(k * step));
        if (divisor == 0) throw ResonanceError(k);
        s.coeffs[k] = (-acc).scaled(Rational(1) / divisor);
    }
    return s;
}

EnergyPoly termination_polynomial(const XSeries& series, int n) {
    const Rational target = Rational(n + 2) - series.indicial_root;
    if (target <= 0 || denominator(target) != 1 ||
        numerator(target) % series.step != 0)
        throw Error("termination_polynomial: x^{n+2} is not on the series grading");
    const BigInt idx = numerator(target) / series.step;
    if (idx > series.truncation_order)
        throw OrderTooLowError("termination_polynomial: series generated only to order " +
                               std::to_string(series.truncation_order));
    return series.coeffs[idx.convert_to<int>()];
}

Poly apply_operator(const EulerOperator& op, const Poly& u, const Rational& energy) {
    check_operator(op);
    Poly out;
    for (int k = 0; k <= u.degree(); ++k) {
        if (u[k] == 0) continue;
        out = out + Poly::monomial(k, u[k] * op.f_of_d.eval(Rational(k)));
        for (const auto& t : op.terms) {
            Rational c = t.coefficient.eval(energy) * u[k];
            if (t.d_power == 1) c *= Rational(k);
            if (c == 0) continue;
            out = out + Poly::monomial(k + t.degree_raise(), c);
        }
    }
    return out;
}

Poly instantiate_series(const XSeries& series, const Rational& energy) {
    if (denominator(series.indicial_root) != 1 || series.indicial_root < 0)
        throw Error("instantiate_series: leading power must be a nonnegative integer");
    const int lam = numerator(series.indicial_root).convert_to<int>();
    Poly out;
    for (int k = 0; k <= series.truncation_order; ++k) {
        const Rational v = series.coeffs[k].eval(energy);
        if (v != 0) out = out + Poly::monomial(lam + k * series.step, v);
    }
    return out;
}

}  // namespace qes
