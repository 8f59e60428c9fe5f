#ifndef SDLAB_QUADRATURE_HPP
#define SDLAB_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "sdlab/errors.hpp"

namespace sdlab {

namespace detail {

template <class Fn>
double adaptive_simpson_rec(Fn&& f, double a, double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0) return left + right + delta / 15.0;
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson on [a, b]; tol is absolute.
template <class Fn>
double adaptive_simpson(Fn&& f, double a, double b, double tol, int max_depth = 40) {
    if (a == b) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// Adaptive integration with the interval split at known kinks.
template <class Fn>
double integrate_with_breaks(Fn&& f, double a, double b, std::vector<double> breaks, double tol,
                             int max_depth = 40) {
    if (!(b > a)) return 0.0;
    breaks.push_back(a);
    breaks.push_back(b);
    std::sort(breaks.begin(), breaks.end());
    double acc = 0.0;
    double prev = a;
    for (double c : breaks) {
        if (c <= prev || c > b) continue;
        const double cc = std::min(c, b);
        if (cc - prev > 0.0)
            acc += adaptive_simpson(f, prev, cc, tol * (cc - prev) / (b - a), max_depth);
        prev = cc;
    }
    return acc;
}

}  // namespace sdlab

#endif
