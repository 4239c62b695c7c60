#pragma once

#include <memory>
#include <vector>

#include "qes/model.hpp"

namespace qes {

// Even moments of the squared measure: moments[m] holds
// integral over the real line of x^{2m} |x|^{4l} exp(-2(a_g x^2 + b x^4)) dx.
// Odd powers vanish by symmetry and are never stored.
struct MomentTable {
    double power_4l = 0.0;
    double two_gauss = 0.0;
    double two_quart = 0.5;
    int max_integrand_degree = 0;  // largest even polynomial degree covered
    std::vector<double> moments;

    double at(int m) const;  // throws MomentOverflowError past capacity
};

// For the pure-quartic weight (a_g = 0, l = 0) moments come from the Gamma
// recurrence on embedded base constants; otherwise from adaptive quadrature
// with the cutoff chosen so the dropped tail is negligible.
MomentTable build_moment_table(const Measure& measure, int max_degree);

// Truncation of the (generally non-terminating) series solution at a fixed
// x-degree, with coefficients kept exact in the energy variable.
struct TruncatedState {
    Parity parity = Parity::odd;
    int degree = 9;
    QesModel model;
    Measure measure;
    EulerOperator op;   // in the shifted energy variable
    XSeries u_of_E;
    std::shared_ptr<const MomentTable> table;

    int lambda() const { return parity == Parity::odd ? 1 : 0; }
    int top_index() const { return (degree - lambda()) / 2; }
};

TruncatedState make_truncated_state(const QesModel& m, Parity parity, int degree);

// Signed weighted inner product <u, (H~ - E) u>_w evaluated by exact
// polynomial contraction against the moment table. Exact eigenpairs give an
// identically zero residual polynomial, hence exactly 0.
double residual_signed(const TruncatedState& st, double E);
// |<u, (H~ - E) u>_w|, the quantity minimized over E.
double residual_inner_product(const TruncatedState& st, double E);
double weighted_norm(const TruncatedState& st, double E);

// Independent cross-check: the same integral by adaptive quadrature on the
// instantiated double-precision polynomials.
double residual_inner_product_quadrature(const TruncatedState& st, double E,
                                         double rel_tol = 1e-10);

struct DeltaMinimum {
    double E_star = 0.0;
    double delta_star = 0.0;
    int node_count = 0;
    bool physical = false;
    bool zero_crossing = false;  // sign change of the signed inner product
};

struct DeltaSample {
    double E = 0.0;
    double delta = 0.0;
};

struct DeltaCurve {
    std::vector<DeltaSample> samples;
    std::vector<DeltaMinimum> minima;
    bool normalized = false;
};

struct ScanOptions {
    bool normalize = false;     // divide by <u,u>_w
    double refine_tol = 1e-8;   // |Delta E| target for located minima
};

// Dense scan of Delta(E) with every strict local minimum and every sign
// crossing located and refined. Minima are annotated with the exact node
// count of u(., E*). Where several minima share a node count, the physical
// one is chosen by smaller Delta; exact zero crossings tie at Delta = 0 and
// are separated by the residual of the next-higher truncation (the series
// convergence criterion), which moves the spurious candidates and leaves the
// converged one in place.
DeltaCurve scan_delta(const TruncatedState& st, double lo, double hi, double step,
                      const ScanOptions& opts = {});

struct NodeCheck {
    int nodes = 0;
    bool pass = false;
};

// Exact real-root count of u(., E), with E rationalized at 1e-12.
NodeCheck node_filter(const TruncatedState& st, double E, int expected_nodes);

struct IdentifiedState {
    int level_index = 0;  // = node count
    double E_star = 0.0;
    double delta_star = 0.0;
};

std::vector<IdentifiedState> identify_states(const QesModel& m, Parity parity, int degree,
                                             double lo, double hi, double step,
                                             const ScanOptions& opts = {});

// Embedded 20-digit base constants for the moment recurrence.
double gamma_quarter();        // Gamma(1/4)
double gamma_half();           // Gamma(1/2)
double gamma_three_quarter();  // Gamma(3/4)

}  // namespace qes
