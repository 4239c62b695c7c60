#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qes/errors.hpp"
#include "qes/euler.hpp"
#include "qes/model.hpp"

using namespace qes;

namespace {

// sextic double well: alpha = -11, beta = 0, gamma = 1, n = 4
QesModel double_well() { return QesModel{-11.0, 0.0, 1.0, 0.0, 4}; }

Rational fact(int n) {
    Rational f(1);
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

TEST_CASE("indicial roots") {
    EulerOperator op = build_euler_operator(double_well());
    // F(D) = D(D-1)
    CHECK(indicial_roots(op) == std::vector<Rational>{Rational(0), Rational(1)});

    // F(D) = D(D + 4l - 1), barrier showcase l = 3/4
    const QesModel barrier{-10.0, 0.0, 1.0, 0.75, 2};
    EulerOperator bop = build_euler_operator(barrier);
    CHECK(indicial_roots(bop) == std::vector<Rational>{Rational(-2), Rational(0)});  // 0 and 1-4l

    EulerOperator just_d;
    just_d.f_of_d = Poly::variable();
    just_d.terms.push_back({2, 0, Poly::variable()});
    CHECK(indicial_roots(just_d) == std::vector<Rational>{Rational(0)});

    EulerOperator irr;
    irr.f_of_d = Poly{Rational(-2), Rational(0), Rational(1)};  // D^2 - 2
    irr.terms.push_back({2, 0, Poly::variable()});
    CHECK_THROWS_AS(indicial_roots(irr), IrrationalIndicialRootError);
}

TEST_CASE("even sector series reproduces the energy polynomials") {
    EulerOperator op = build_euler_operator(double_well());
    const XSeries s = generate_series(op, Rational(0), 3);
    REQUIRE(s.coeffs.size() == 4);
    CHECK(s.step == 2);
    CHECK(s.coeffs[0] == Poly::constant(Rational(1)));
    // c1 = -E/2!, c2 = (E^2-16)/4!, c3 = (64E - E^3)/6!
    CHECK(s.coeffs[1] == Poly{Rational(0), Rational(-1, 2)});
    CHECK(s.coeffs[2] == Poly{Rational(-16), Rational(0), Rational(1)}.scaled(1 / fact(4)));
    CHECK(s.coeffs[3] ==
          Poly{Rational(0), Rational(64), Rational(0), Rational(-1)}.scaled(1 / fact(6)));
}

TEST_CASE("odd sector series matches the closed-form coefficients") {
    EulerOperator op = build_euler_operator(double_well());
    const XSeries s = generate_series(op, Rational(1), 4);
    REQUIRE(s.coeffs.size() == 5);
    CHECK(s.coeffs[0] == Poly::constant(Rational(1)));
    CHECK(s.coeffs[1] == Poly{Rational(0), Rational(-1)}.scaled(1 / fact(3)));
    CHECK(s.coeffs[2] == Poly{Rational(-36), Rational(0), Rational(1)}.scaled(1 / fact(5)));
    CHECK(s.coeffs[3] ==
          Poly{Rational(0), Rational(76), Rational(0), Rational(-1)}.scaled(1 / fact(7)));
    CHECK(s.coeffs[4] == Poly{Rational(-3024), Rational(0), Rational(8), Rational(0), Rational(1)}
                             .scaled(1 / fact(9)));
}

TEST_CASE("order zero series is the bare monomial") {
    EulerOperator op = build_euler_operator(double_well());
    const XSeries s = generate_series(op, Rational(0), 0);
    CHECK(s.coeffs.size() == 1);
    CHECK(instantiate_series(s, Rational(5)) == Poly::constant(Rational(1)));
}

TEST_CASE("resonant branch is reported") {
    // barrier showcase: l = 3/4, second indicial root 1 - 4l = -2,
    // F(-2 + 2k) vanishes at k = 1
    const QesModel barrier{-10.0, 0.0, 1.0, 0.75, 2};
    EulerOperator op = build_euler_operator(barrier);
    CHECK_THROWS_AS(generate_series(op, Rational(-2), 3), ResonanceError);
    try {
        generate_series(op, Rational(-2), 3);
    } catch (const ResonanceError& e) {
        CHECK(e.order == 1);
    }
}

TEST_CASE("termination polynomial") {
    EulerOperator op = build_euler_operator(double_well());
    const XSeries s = generate_series(op, Rational(0), 4);

    // n=4: coefficient of x^6, proportional to E(E^2 - 64)
    const EnergyPoly t4 = termination_polynomial(s, 4);
    const EnergyPoly target = Poly{Rational(0), Rational(-64), Rational(0), Rational(1)};
    CHECK(t4.scaled(1 / t4.leading()) == target.scaled(1 / target.leading()));

    // n=2 sector of its own model: Etil^2 - 2 beta Etil/sqrt(gamma) - 4 n sqrt(gamma)
    const QesModel m2{-7.0, 0.0, 1.0, 0.0, 2};
    const XSeries s2 = generate_series(build_euler_operator(m2), Rational(0), 2);
    const EnergyPoly t2 = termination_polynomial(s2, 2);
    CHECK(t2.scaled(1 / t2.leading()) == Poly{Rational(-8), Rational(0), Rational(1)});

    // n=0: linear in the energy (ground state only)
    const QesModel m0{-3.0, 0.0, 1.0, 0.0, 0};
    const XSeries s0 = generate_series(build_euler_operator(m0), Rational(0), 1);
    CHECK(termination_polynomial(s0, 0).degree() == 1);

    CHECK_THROWS_AS(termination_polynomial(s2, 6), OrderTooLowError);
}

TEST_CASE("apply_operator annihilates exact eigenpairs") {
    EulerOperator op = build_euler_operator(double_well());
    const Poly p_plus{Rational(1), Rational(0), Rational(-4), Rational(0), Rational(2)};
    const Poly p_zero{Rational(1), Rational(0), Rational(0), Rational(0), Rational(-2, 3)};
    const Poly p_minus{Rational(1), Rational(0), Rational(4), Rational(0), Rational(2)};
    CHECK(apply_operator(op, p_plus, Rational(8)).is_zero());
    CHECK(apply_operator(op, p_zero, Rational(0)).is_zero());
    CHECK(apply_operator(op, p_minus, Rational(-8)).is_zero());
    CHECK(apply_operator(op, Poly{}, Rational(17)).is_zero());
    // non-eigenpair leaves a nonzero remainder
    CHECK(!apply_operator(op, p_plus, Rational(7)).is_zero());
}

TEST_CASE("grading: lower coefficients are prefix-stable") {
    EulerOperator op = build_euler_operator(double_well());
    const XSeries a = generate_series(op, Rational(1), 5);
    const XSeries b = generate_series(op, Rational(1), 9);
    for (int k = 0; k <= 5; ++k) CHECK(a.coeffs[k] == b.coeffs[k]);
}

TEST_CASE("energy-polynomial degrees grow by one per order") {
    EulerOperator op = build_euler_operator(double_well());
    for (const Rational lam : {Rational(0), Rational(1)}) {
        const XSeries s = generate_series(op, lam, 8);
        for (int k = 0; k <= 8; ++k) CHECK(s.coeffs[k].degree() == k);
    }
}

TEST_CASE("factor propagation: coefficients past the termination vanish at QES roots") {
    EulerOperator op = build_euler_operator(double_well());
    const XSeries s = generate_series(op, Rational(0), 10);
    for (const Rational root : {Rational(-8), Rational(0), Rational(8)}) {
        for (int k = 3; k <= 10; ++k) CHECK(s.coeffs[k].eval(root) == 0);
    }
}

TEST_CASE("series coefficients solve the recursion identically") {
    // recompute the residual of the defining equation: applying the operator
    // to the instantiated truncation leaves only the two top orders
    EulerOperator op = build_euler_operator(double_well());
    const XSeries s = generate_series(op, Rational(1), 6);
    const Rational e(-5);
    const Poly u = instantiate_series(s, e);
    const Poly rem = apply_operator(op, u, e);
    CHECK(!rem.is_zero());
    for (int p = 0; p <= rem.degree(); ++p) {
        if (rem[p] == 0) continue;
        CHECK(p >= 1 + 2 * 6 + 2);  // only x^{lambda + 2K + 2} and above survive
    }
}
