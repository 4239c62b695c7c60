#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "qes/errors.hpp"
#include "qes/reference.hpp"

using namespace qes;

namespace {
const QesModel kDoubleWell{-11.0, 0.0, 1.0, 0.0, 4};
}

TEST_CASE("discretize layout") {
    const TridiagSystem sys = discretize(kDoubleWell, 5.0, 999);
    CHECK(sys.N == 999);
    CHECK(sys.h() == doctest::Approx(0.01).epsilon(1e-12));
    // interior diagonal at x = 0 is 2/h^2 (V(0) = 0); x_i = 0 at i = 499
    CHECK(sys.x(499) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(sys.diagonal[499] == doctest::Approx(2.0 / (0.01 * 0.01)).epsilon(1e-12));
    // even potential: endpoints match
    CHECK(sys.diagonal.front() == doctest::Approx(sys.diagonal.back()).epsilon(1e-12));

    CHECK_THROWS(discretize(kDoubleWell, -1.0, 100));
    CHECK_THROWS(discretize(kDoubleWell, 5.0, 2));
}

TEST_CASE("harmonic oscillator sanity: E_k = 2k + 1") {
    // V = x^2 in units hbar = 2m = 1
    const auto vho = [](double x) { return x * x; };
    const TridiagSystem coarse = discretize(vho, 10.0, 4000);
    const ReferenceSpectrum sc = eigenvalues_bisect(coarse, 5, 1e-10);
    for (int k = 0; k < 5; ++k)
        CHECK(sc.eigenvalues[k] == doctest::Approx(2.0 * k + 1.0).epsilon(2e-5));

    const TridiagSystem fine = discretize(vho, 10.0, 8001);
    const ReferenceSpectrum sf = eigenvalues_bisect(fine, 5, 1e-10);
    const ReferenceSpectrum ex = richardson_refine(sc, sf);
    CHECK(ex.extrapolated);
    CHECK(ex.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(ex.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-8));
}

TEST_CASE("richardson_refine validates grids") {
    const auto vho = [](double x) { return x * x; };
    const TridiagSystem a = discretize(vho, 10.0, 1000);
    const TridiagSystem b = discretize(vho, 10.0, 2001);
    const TridiagSystem c = discretize(vho, 9.0, 2001);
    const ReferenceSpectrum sa = eigenvalues_bisect(a, 3, 1e-9);
    const ReferenceSpectrum sb = eigenvalues_bisect(b, 3, 1e-9);
    const ReferenceSpectrum sc2 = eigenvalues_bisect(c, 3, 1e-9);
    CHECK_NOTHROW(richardson_refine(sa, sb));
    CHECK_THROWS_AS(richardson_refine(sa, sc2), GridMismatchError);
    CHECK_THROWS_AS(richardson_refine(sb, sa), GridMismatchError);

    // identical coarse and fine values leave the spectrum unchanged
    ReferenceSpectrum same_f = sb;
    ReferenceSpectrum same_c = sa;
    same_c.eigenvalues = sb.eigenvalues;
    const ReferenceSpectrum out = richardson_refine(same_c, same_f);
    for (size_t k = 0; k < out.eigenvalues.size(); ++k)
        CHECK(out.eigenvalues[k] == doctest::Approx(sb.eigenvalues[k]).epsilon(1e-14));
}

TEST_CASE("double-well spectrum anchors to the terminating energies") {
    const ReferenceSpectrum spec = compute_reference(kDoubleWell, {5.0, 4000, 6, 1e-10, true});
    CHECK(spec.eigenvalues[0] == doctest::Approx(-8.0).epsilon(1e-4));
    CHECK(std::abs(spec.eigenvalues[2]) <= 1e-4);
    CHECK(spec.eigenvalues[4] == doctest::Approx(8.0).epsilon(1e-4));
    // tabulated values for the in-between states
    CHECK(std::abs(spec.eigenvalues[1] - (-7.917350)) <= 1e-4);
    CHECK(std::abs(spec.eigenvalues[3] - 2.520359) <= 1e-4);
    CHECK(std::abs(spec.eigenvalues[5] - 14.112964) <= 1e-4);
}

TEST_CASE("multiplicity: spectra are simple") {
    const TridiagSystem sys = discretize(kDoubleWell, 5.0, 2000);
    const ReferenceSpectrum s = eigenvalues_bisect(sys, 6, 1e-10);
    for (int k = 0; k < 6; ++k) {
        const double e = s.eigenvalues[k];
        const int below = sturm_count_below(sys, e - 1e-7);
        const int above = sturm_count_below(sys, e + 1e-7);
        CHECK(above - below == 1);
    }
}

TEST_CASE("monotone h^2 convergence from below over nested grids") {
    const QesModel m = kDoubleWell;
    const ReferenceSpectrum s1 = eigenvalues_bisect(discretize(m, 5.0, 1000), 8, 1e-11);
    const ReferenceSpectrum s2 = eigenvalues_bisect(discretize(m, 5.0, 2001), 8, 1e-11);
    const ReferenceSpectrum s3 = eigenvalues_bisect(discretize(m, 5.0, 4003), 8, 1e-11);
    for (int k = 0; k < 8; ++k) {
        const double d1 = s2.eigenvalues[k] - s1.eigenvalues[k];
        const double d2 = s3.eigenvalues[k] - s2.eigenvalues[k];
        CHECK(d1 > 0.0);  // finite differences approach from below here
        CHECK(d2 > 0.0);
        CHECK(d2 == doctest::Approx(d1 / 4.0).epsilon(0.05));  // O(h^2)
    }
}

TEST_CASE("box-size insensitivity at matched spacing") {
    // L = 5 with N = 4004 and L = 6 with N = 4805 share h = 10/4005
    const ReferenceSpectrum a = eigenvalues_bisect(discretize(kDoubleWell, 5.0, 4004), 20, 1e-11);
    const ReferenceSpectrum b = eigenvalues_bisect(discretize(kDoubleWell, 6.0, 4805), 20, 1e-11);
    const double ha = 10.0 / 4005, hb = 12.0 / 4806;
    REQUIRE(ha == doctest::Approx(hb).epsilon(1e-14));
    for (int k = 0; k < 20; ++k)
        CHECK(std::abs(a.eigenvalues[k] - b.eigenvalues[k]) < 1e-9);
}

TEST_CASE("inverse-iteration node counts label the lowest levels") {
    const TridiagSystem sys = discretize(kDoubleWell, 5.0, 2000);
    const ReferenceSpectrum s = eigenvalues_bisect(sys, 6, 1e-10);
    for (int k = 0; k <= 5; ++k)
        CHECK(eigenvector_sign_changes(sys, s.eigenvalues[k]) == k);
}

TEST_CASE("eigenvalues_bisect argument checks") {
    const TridiagSystem sys = discretize(kDoubleWell, 5.0, 100);
    CHECK_THROWS(eigenvalues_bisect(sys, 0));
    CHECK_THROWS(eigenvalues_bisect(sys, 101));
    CHECK_THROWS(eigenvalues_bisect(sys, 3, -1.0));
}
