#pragma once

#include <initializer_list>
#include <vector>

#include "qes/rational.hpp"

namespace qes {

// Univariate polynomial over the rationals, dense coefficient form,
// coeffs_[k] multiplying x^k. Canonical: no trailing zero coefficients, so
// the zero polynomial has an empty coefficient vector and degree() == -1.
class Poly {
public:
    Poly() = default;
    Poly(std::initializer_list<Rational> coeffs);
    explicit Poly(std::vector<Rational> coeffs);

    static Poly constant(const Rational& c);
    static Poly variable();                           // x
    static Poly monomial(int power, const Rational& c);

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    // Coefficient of x^k; zero beyond the degree.
    const Rational& operator[](int k) const;
    const std::vector<Rational>& coefficients() const { return coeffs_; }
    const Rational& leading() const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly scaled(const Rational& c) const;
    Poly derivative() const;

    // Multiply by x^k.
    Poly shifted_up(int k) const;
    // Exact division by x^k; throws if any lower coefficient is nonzero.
    Poly shifted_down(int k) const;

    Rational eval(const Rational& x) const;
    double eval_double(double x) const;
    int sign_at(const Rational& x) const;

    bool operator==(const Poly& o) const = default;

    std::string str(const std::string& var = "x") const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

struct RootInterval {
    Rational lo;
    Rational hi;
    int multiplicity_hint = 1;
};

// All real roots of p lie strictly inside (-bound, bound).
Rational cauchy_root_bound(const Poly& p);

// Number of distinct real roots of p in the open interval (lo, hi), computed
// from the Sturm chain in exact arithmetic. Endpoints that are themselves
// roots are handled by the limiting sign-variation convention (equivalent to
// nudging both endpoints by +epsilon for every sufficiently small epsilon),
// so the count stays exact with no tunable perturbation.
int sturm_count(const Poly& p, const Rational& lo, const Rational& hi);

// Disjoint isolating intervals, one per distinct real root, within the
// Cauchy bound. multiplicity_hint is the exact multiplicity.
std::vector<RootInterval> isolate_real_roots(const Poly& p);

// Bisection to |interval| <= tol, with a Newton polish when the derivative
// at the midpoint is safely away from zero (|p'| > 1e-6). If the interval
// does not bracket a sign change (even multiplicity), falls back to the
// derivative's root; throws NoSignChangeError when that fails too.
double refine_root(const Poly& p, const RootInterval& iv, double tol = 1e-12);

// Exact rational root inside iv, if one exists near the refined value
// (checked by exact evaluation of continued-fraction candidates).
std::optional<Rational> exact_rational_root(const Poly& p, const RootInterval& iv,
                                            double refined);

}  // namespace qes
