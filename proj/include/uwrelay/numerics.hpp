#pragma once

#include <cmath>
#include <utility>

namespace uwrelay::numerics {

/// Golden-section search for the minimum of a unimodal function on [lo, hi].
/// Stops once the bracket is narrower than tol.
template <class F>
double golden_section_minimize(F&& fn, double lo, double hi, double tol) {
    constexpr double inv_phi = 0.6180339887498948482;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = fn(c);
    double fd = fn(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = fn(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = fn(d);
        }
    }
    return 0.5 * (a + b);
}

/// Root of fn on [lo, hi] by bisection. fn(lo) and fn(hi) must differ in sign.
template <class F>
double bisect_root(F&& fn, double lo, double hi, double tol) {
    double f_lo = fn(lo);
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = fn(mid);
        if (f_mid == 0.0) {
            return mid;
        }
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

namespace detail {

template <class F>
double simpson_step(F& fn, double a, double b, double fa, double fm, double fb, double whole,
                    double eps, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = fn(lm);
    const double frm = fn(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * eps) {
        return left + right + delta / 15.0;
    }
    return simpson_step(fn, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
           simpson_step(fn, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature with a tolerance relative to the integral.
/// A coarse composite pass sets the absolute error budget.
template <class F>
double adaptive_simpson(F&& fn, double a, double b, double rel_tol, int max_depth = 40) {
    constexpr int kPanels = 16;
    const double h = (b - a) / kPanels;
    double xs[kPanels + 1];
    double fs[kPanels + 1];
    for (int i = 0; i <= kPanels; ++i) {
        xs[i] = a + h * i;
        fs[i] = fn(xs[i]);
    }
    xs[kPanels] = b;

    double coarse = 0.0;
    double mids[kPanels];
    double panel[kPanels];
    for (int i = 0; i < kPanels; ++i) {
        mids[i] = fn(0.5 * (xs[i] + xs[i + 1]));
        panel[i] = h / 6.0 * (fs[i] + 4.0 * mids[i] + fs[i + 1]);
        coarse += panel[i];
    }
    const double eps = rel_tol * std::abs(coarse) / kPanels;
    double total = 0.0;
    for (int i = 0; i < kPanels; ++i) {
        total += detail::simpson_step(fn, xs[i], xs[i + 1], fs[i], mids[i], fs[i + 1], panel[i],
                                      eps, max_depth);
    }
    return total;
}

}  // namespace uwrelay::numerics
