#include "qes/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qes/errors.hpp"

namespace qes {

double potential_value(const QesModel& m, double x) {
    const double x2 = x * x;
    double v = m.alpha * x2 + m.beta * x2 * x2 + m.gamma * x2 * x2 * x2;
    if (m.sigma != 0.0) v += m.sigma / x2;
    return v;
}

TridiagSystem discretize(const std::function<double(double)>& potential, double L, int N) {
    if (L <= 0.0) throw Error("discretize: box size must be positive");
    if (N < 3) throw Error("discretize: need at least 3 interior points");
    TridiagSystem sys;
    sys.L = L;
    sys.N = N;
    const double h = sys.h();
    sys.off_diagonal = -1.0 / (h * h);
    sys.diagonal.resize(N);
    for (int i = 0; i < N; ++i) {
        sys.diagonal[i] = 2.0 / (h * h) + potential(sys.x(i));
        if (!std::isfinite(sys.diagonal[i]))
            throw Error("potential is singular on a grid point (x = " +
                        std::to_string(sys.x(i)) + "); adjust N or L");
    }
    return sys;
}

TridiagSystem discretize(const QesModel& m, double L, int N) {
    return discretize([&m](double x) { return potential_value(m, x); }, L, N);
}

int sturm_count_below(const TridiagSystem& sys, double lambda) {
    const double b2 = sys.off_diagonal * sys.off_diagonal;
    const double pivmin = b2 * std::numeric_limits<double>::min() * 1e4 +
                          std::numeric_limits<double>::min();
    int count = 0;
    double d = 1.0;
    for (int i = 0; i < sys.N; ++i) {
        d = sys.diagonal[i] - lambda - (i > 0 ? b2 / d : 0.0);
        if (std::abs(d) < pivmin) d = -pivmin;
        if (d < 0.0) ++count;
    }
    return count;
}

ReferenceSpectrum eigenvalues_bisect(const TridiagSystem& sys, int k_max, double tol) {
    if (k_max < 1 || k_max > sys.N) throw Error("eigenvalues_bisect: bad k_max");
    if (tol <= 0.0) throw Error("eigenvalues_bisect: tol must be positive");

    const auto [dmin_it, dmax_it] = std::minmax_element(sys.diagonal.begin(), sys.diagonal.end());
    const double gersh_lo = *dmin_it - 2.0 * std::abs(sys.off_diagonal);
    const double gersh_hi = *dmax_it + 2.0 * std::abs(sys.off_diagonal);

    ReferenceSpectrum spec;
    spec.L = sys.L;
    spec.N = sys.N;
    spec.eigenvalues.resize(k_max);
    for (int k = 0; k < k_max; ++k) {
        double lo = gersh_lo, hi = gersh_hi;
        int iter = 0;
        while (hi - lo > tol) {
            if (++iter > 4000)
                throw ConvergenceFailureError("bisection iteration cap exceeded");
            const double mid = 0.5 * (lo + hi);
            if (sturm_count_below(sys, mid) >= k + 1)
                hi = mid;
            else
                lo = mid;
        }
        spec.eigenvalues[k] = 0.5 * (lo + hi);
    }
    return spec;
}

ReferenceSpectrum richardson_refine(const ReferenceSpectrum& coarse,
                                    const ReferenceSpectrum& fine) {
    if (coarse.L != fine.L || fine.N != 2 * coarse.N + 1 ||
        coarse.eigenvalues.size() != fine.eigenvalues.size())
        throw GridMismatchError("richardson_refine: grids are not nested (need same L, N_fine = 2N+1)");
    ReferenceSpectrum out = fine;
    out.extrapolated = true;
    for (size_t k = 0; k < out.eigenvalues.size(); ++k)
        out.eigenvalues[k] = (4.0 * fine.eigenvalues[k] - coarse.eigenvalues[k]) / 3.0;
    return out;
}

int eigenvector_sign_changes(const TridiagSystem& sys, double lambda) {
    const int n = sys.N;
    const double e = sys.off_diagonal;
    // inverse iteration with a slightly shifted tridiagonal solve
    // (LU with partial pivoting between adjacent rows)
    const double shift = lambda + 1e-9 * (1.0 + std::abs(lambda));
    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    for (int sweep = 0; sweep < 3; ++sweep) {
        std::vector<double> a(n), b(n - 1), c(n - 1, e), rhs = v;
        for (int i = 0; i < n; ++i) a[i] = sys.diagonal[i] - shift;
        for (int i = 0; i + 1 < n; ++i) b[i] = e;
        std::vector<double> sup2(n, 0.0);
        for (int i = 0; i + 1 < n; ++i) {
            if (std::abs(c[i]) > std::abs(a[i])) {
                std::swap(a[i], c[i]);
                std::swap(b[i], a[i + 1]);
                if (i + 2 < n) std::swap(sup2[i], b[i + 1]);
                std::swap(rhs[i], rhs[i + 1]);
            }
            if (a[i] == 0.0) a[i] = 1e-300;
            const double m = c[i] / a[i];
            a[i + 1] -= m * b[i];
            if (i + 2 < n) b[i + 1] -= m * sup2[i];
            rhs[i + 1] -= m * rhs[i];
        }
        if (a[n - 1] == 0.0) a[n - 1] = 1e-300;
        v[n - 1] = rhs[n - 1] / a[n - 1];
        for (int i = n - 2; i >= 0; --i) {
            double s = rhs[i] - b[i] * v[i + 1];
            if (i + 2 < n) s -= sup2[i] * v[i + 2];
            v[i] = s / a[i];
        }
        double norm = 0.0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        for (double& x : v) x /= norm;
    }
    const double scale = *std::max_element(v.begin(), v.end(),
                                           [](double a, double b) { return std::abs(a) < std::abs(b); });
    int changes = 0;
    double prev = 0.0;
    for (double x : v) {
        if (std::abs(x) < 1e-8 * std::abs(scale)) continue;  // skip numerically dead points
        if (prev != 0.0 && (x > 0) != (prev > 0)) ++changes;
        prev = x;
    }
    return changes;
}

ReferenceSpectrum compute_reference(const QesModel& m, const ReferenceOptions& opts) {
    const TridiagSystem coarse = discretize(m, opts.L, opts.N);
    ReferenceSpectrum sc = eigenvalues_bisect(coarse, opts.k_max, opts.tol);
    if (!opts.richardson) return sc;
    const TridiagSystem fine = discretize(m, opts.L, 2 * opts.N + 1);
    const ReferenceSpectrum sf = eigenvalues_bisect(fine, opts.k_max, opts.tol);
    return richardson_refine(sc, sf);
}

}  // namespace qes
