#pragma once

#include <vector>

#include "qes/poly.hpp"

namespace qes {

// Polynomial in the energy variable (E, or the shifted variable when the
// quartic coupling is nonzero).
using EnergyPoly = Poly;

// One monomial piece of the degree-raising part: coefficient(E) * x^a (d/dx)^b
// with b in {0, 1}. Applied to x^k it gives coefficient * k^b * x^{k + a - b},
// so a - b > 0 keeps the series graded.
struct MonomialTerm {
    int x_power = 0;
    int d_power = 0;
    EnergyPoly coefficient;

    int degree_raise() const { return x_power - d_power; }
};

// Operator in Euler form: F(D) plus a sum of degree-raising monomial terms,
// where D = x d/dx acts on monomials as D x^k = k x^k.
struct EulerOperator {
    Poly f_of_d;
    std::vector<MonomialTerm> terms;
};

// Formal series sum_k c_k(E) x^{indicial_root + k*step} with c_0 = 1.
struct XSeries {
    Rational indicial_root;
    int step = 2;
    int truncation_order = 0;
    std::vector<EnergyPoly> coeffs;  // size truncation_order + 1
};

// Rational roots of F, ascending. Throws IrrationalIndicialRootError when F
// has a real root with no rational representation (outside the validated
// sextic family, where all indicial roots are rational).
std::vector<Rational> indicial_roots(const EulerOperator& op);

// Graded recursion for the series solution: the coefficient of
// x^{lambda + k*step} is minus the accumulated lower-order contributions
// divided by F(lambda + k*step). Throws ResonanceError(k) when that divisor
// vanishes, i.e. the branch admits no plain power series.
XSeries generate_series(const EulerOperator& op, const Rational& lambda, int order);

// Coefficient of x^{n+2}, the first term past degree n: its roots in the
// energy variable are the terminating (QES) energies.
EnergyPoly termination_polynomial(const XSeries& series, int n);

// Exact application of (F(D) + P)|_E to a polynomial in x.
Poly apply_operator(const EulerOperator& op, const Poly& u, const Rational& energy);

// Instantiate the truncated series at an exact energy value.
Poly instantiate_series(const XSeries& series, const Rational& energy);

}  // namespace qes
