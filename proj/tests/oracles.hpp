#pragma once

// Reference computations used only by the tests. Nothing here shares code
// with the library paths it checks.

#include <cmath>
#include <functional>

namespace qhp::test {

namespace detail {
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double fa, double fm, double fb, double whole, double tol,
                               int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    // the second test stops refinement once rounding dominates
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol ||
        std::abs(delta) <= 1e-15 * std::abs(left + right))
        return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}
}  // namespace detail

/// Adaptive Simpson with Richardson correction.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-14) {
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

/// Integral over [0, b] split into panels so narrow peaks are not missed.
inline double integrate_panels(const std::function<double(double)>& f, double b, int panels,
                               double tol = 1e-15) {
    double s = 0.0;
    for (int i = 0; i < panels; ++i) {
        s += integrate(f, b * i / panels, b * (i + 1) / panels, tol / panels);
    }
    return s;
}

inline double central_first(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline double central_second(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

/// Plain bisection; f(lo) and f(hi) must differ in sign.
inline double bisect(const std::function<double(double)>& f, double lo, double hi, int iters = 200) {
    double flo = f(lo);
    for (int i = 0; i < iters; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Oscillator level omega (2 n_r + lambda + 3/2), with lambda(lambda+1) = ell(ell+1) + 2 mu B.
inline double pseudoharmonic_level(double mu, double delta, double b, unsigned ell, unsigned n_r) {
    const double omega = std::sqrt(2.0 * delta / mu);
    const double c = ell * (ell + 1.0) + 2.0 * mu * b;
    const double lambda = 0.5 * (-1.0 + std::sqrt(1.0 + 4.0 * c));
    return omega * (2.0 * n_r + lambda + 1.5);
}

}  // namespace qhp::test
