#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qes/euler.hpp"
#include "qes/poly.hpp"

namespace qes {

// Sextic-family Hamiltonian -d^2/dx^2 + alpha x^2 + beta x^4 + gamma x^6
// (+ sigma/x^2 when sigma > 0), units hbar = 2m = 1; n is the polynomial
// degree of the terminating sector.
struct QesModel {
    double alpha = -11.0;
    double beta = 0.0;
    double gamma = 1.0;
    double sigma = 0.0;
    int n = 4;
};

// Ground-state measure psi0 = |x|^{2l} exp(-(a_g x^2 + b x^4)). For the
// barrier-free case a_g = a = beta/(4 sqrt(gamma)); for the barrier case the
// field `a` stores sqrt(gamma) (the quartic-only convention, exponent a/4)
// and the Gaussian factor is absent.
struct Measure {
    double a = 0.0;
    double b = 0.25;
    double l = 0.0;
    bool barrier = false;

    double gauss_coeff() const { return barrier ? 0.0 : a; }
    double quart_coeff() const { return b; }
    double eval(double x) const;
};

struct CentrifugalParams {
    double s = 0.0;
    double mu = 0.0;
};

struct QesCondition {
    bool satisfied = false;
    double implied_n = 0.0;
};

struct SpectrumEntry {
    double energy = 0.0;
    std::optional<Rational> energy_exact;  // set when the root is exactly rational
    Poly polynomial;                       // degree-n polynomial factor, P(0) = 1
    int node_count = 0;
};

struct ExactSpectrum {
    std::vector<SpectrumEntry> entries;  // sorted by energy
    double energy_shift = 0.0;           // beta / (2 sqrt(gamma))
    EnergyPoly termination;              // polynomial whose roots gave the energies
};

struct ValidationEntry {
    std::string check;
    bool agreed = false;
    std::string detail;
    bool operator==(const ValidationEntry&) const = default;
};

// Exact sqrt(gamma) when gamma is a perfect rational square, otherwise the
// rationalized double square root (the pipeline then runs on that nearest
// representable model).
Rational sqrt_gamma_rational(const QesModel& m);

Measure derive_measure(const QesModel& m);
QesCondition qes_condition(const QesModel& m);

// Printed form of the barrier coupling condition (the sign of the half-root
// term differs from the derived condition; see validate_quoted_formulas).
double implied_n_quoted_barrier(const QesModel& m);

// Euler-form operator for the model's transformed eigenproblem in the
// shifted energy variable.
EulerOperator build_euler_operator(const QesModel& m);

enum class Parity { even, odd };

// The n/2 + 1 terminating eigenpairs of the even (lambda = 0) sector.
// Requesting the odd sector of the barrier-free model throws
// OddSectorUnavailableError. Throws ConditionViolatedError when the QES
// coupling condition fails.
ExactSpectrum solve_exact_spectrum(const QesModel& m, Parity sector = Parity::even);

struct Wavefunction {
    Measure measure;
    Poly polynomial;
    double energy = 0.0;

    double operator()(double x) const;
    // integral of psi^2 over the real line, adaptive quadrature
    double normalization(double rel_tol = 1e-10) const;
};

Wavefunction assemble_wavefunction(const QesModel& m, const SpectrumEntry& entry);

CentrifugalParams centrifugal_from_model(const QesModel& m);
QesModel model_from_centrifugal(const CentrifugalParams& p, double a, int n);

// Cross-checks of the closed-form expressions against the root-solving path;
// discrepancies are reported, never silently patched over.
std::vector<ValidationEntry> validate_quoted_formulas(const QesModel& m);

}  // namespace qes
