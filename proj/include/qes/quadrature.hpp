#pragma once

#include <cmath>
#include <functional>

namespace qes {

namespace detail {

inline double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_step(const std::function<double(double)>& f, double a, double fa,
                            double b, double fb, double m, double fm, double whole,
                            double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(a, fa, m, fm, flm);
    const double right = simpson(m, fm, b, fb, frm);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_step(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1) +
           adaptive_step(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1);
}

}  // namespace detail

// Adaptive Simpson with Richardson update; tol is absolute. The interval is
// pre-split into fixed panels so a peak far from the interval midpoint cannot
// hide from the first subdivision.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol, int max_depth = 40) {
    constexpr int panels = 12;
    const double w = (b - a) / panels;
    double total = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double pa = a + i * w, pb = (i == panels - 1) ? b : pa + w;
        const double m = 0.5 * (pa + pb);
        const double fa = f(pa), fb = f(pb), fm = f(m);
        const double whole = detail::simpson(pa, fa, pb, fb, fm);
        total += detail::adaptive_step(f, pa, fa, pb, fb, m, fm, whole, tol / panels, max_depth);
    }
    return total;
}

// Smallest L >= start with |f| below cutoff at L and at a few points past it
// (monotone-decay integrands only).
inline double decay_cutoff(const std::function<double(double)>& f, double start,
                           double cutoff) {
    double L = start;
    while (L < 1e6) {
        if (std::abs(f(L)) < cutoff && std::abs(f(L * 1.25)) < cutoff) return L;
        L *= 1.5;
    }
    return L;
}

}  // namespace qes
