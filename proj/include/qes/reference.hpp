#pragma once

#include <functional>
#include <vector>

#include "qes/model.hpp"

namespace qes {

// Dirichlet three-point discretization of -d^2/dx^2 + V on [-L, L]:
// interior points x_i = -L + i h, i = 1..N, h = 2L/(N+1), diagonal
// 2/h^2 + V(x_i), constant off-diagonal -1/h^2.
struct TridiagSystem {
    std::vector<double> diagonal;
    double off_diagonal = 0.0;
    double L = 0.0;
    int N = 0;
    double h() const { return 2.0 * L / (N + 1); }
    double x(int i) const { return -L + h() * (i + 1); }  // i = 0..N-1
};

struct ReferenceSpectrum {
    std::vector<double> eigenvalues;  // index k = number of interior nodes
    double L = 0.0;
    int N = 0;
    bool extrapolated = false;
};

TridiagSystem discretize(const std::function<double(double)>& potential, double L, int N);
TridiagSystem discretize(const QesModel& m, double L, int N);

double potential_value(const QesModel& m, double x);

// Number of eigenvalues of the system strictly below lambda (LDL^T pivot
// signs, the tridiagonal Sturm count).
int sturm_count_below(const TridiagSystem& sys, double lambda);

// The k_max lowest eigenvalues by Sturm-count bisection inside the
// Gershgorin bound, each to absolute tolerance tol.
ReferenceSpectrum eigenvalues_bisect(const TridiagSystem& sys, int k_max, double tol = 1e-10);

// Per-eigenvalue h^2 -> 0 extrapolation from nested grids (same box,
// N_fine = 2 N_coarse + 1): E = (4 E_fine - E_coarse) / 3.
ReferenceSpectrum richardson_refine(const ReferenceSpectrum& coarse,
                                    const ReferenceSpectrum& fine);

// Interior sign changes of the eigenvector for the eigenvalue nearest
// lambda, from a couple of inverse-iteration sweeps. Spot check only; the
// level labeling itself comes from eigenvalue order.
int eigenvector_sign_changes(const TridiagSystem& sys, double lambda);

struct ReferenceOptions {
    double L = 5.0;
    int N = 4000;
    int k_max = 20;
    double tol = 1e-10;
    bool richardson = true;
};

// Coarse + fine + extrapolation in one call.
ReferenceSpectrum compute_reference(const QesModel& m, const ReferenceOptions& opts = {});

}  // namespace qes
