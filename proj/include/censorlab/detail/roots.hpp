#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "censorlab/params.hpp"

namespace censorlab::detail {

struct Bracket {
    double lo;
    double hi;
    double f_lo;
    double f_hi;
    int evaluations;
};

/// Widen [lo, hi] geometrically about its midpoint until f changes sign.
/// Throws SolverError after `max_doublings` widenings.
template <class Fn>
Bracket expand_bracket(Fn&& f, double lo, double hi, int max_doublings = 80) {
    double f_lo = f(lo);
    double f_hi = f(hi);
    int evals = 2;
    for (int k = 0; k < max_doublings && f_lo * f_hi > 0.0; ++k) {
        const double width = hi - lo;
        // Move the endpoint on the side the root must lie.
        if (std::fabs(f_lo) < std::fabs(f_hi)) {
            lo -= width;
            f_lo = f(lo);
        } else {
            hi += width;
            f_hi = f(hi);
        }
        ++evals;
    }
    if (f_lo * f_hi > 0.0) throw SolverError("expand_bracket: no sign change found");
    return {lo, hi, f_lo, f_hi, evals};
}

struct RootResult {
    double x;
    int iterations;
};

/// Brent's method (inverse quadratic / secant with bisection fallback) on a
/// sign-changing bracket. Runs to machine precision when xtol = 0.
template <class Fn>
RootResult brent(Fn&& f, Bracket br, double xtol = 0.0, int max_iter = 200) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    double a = br.lo, b = br.hi, fa = br.f_lo, fb = br.f_hi;
    if (fa == 0.0) return {a, 0};
    if (fb == 0.0) return {b, 0};

    double c = a, fc = fa, d = b - a, e = d;
    for (int iter = 1; iter <= max_iter; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 = 2.0 * eps * std::fabs(b) + 0.5 * xtol +
                            std::numeric_limits<double>::min();
        const double xm = 0.5 * (c - b);
        if (std::fabs(xm) <= tol1 || fb == 0.0) return {b, iter};

        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
            const double s = fb / fa;
            double p, q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qa = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::fabs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::fabs(tol1 * q), std::fabs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::fabs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
    }
    throw SolverError("brent: iteration cap reached");
}

/// Plain bisection to bracket width `xtol` (or machine precision).
template <class Fn>
RootResult bisect(Fn&& f, double lo, double hi, double xtol = 0.0, int max_iter = 400) {
    double f_lo = f(lo);
    const double f_hi = f(hi);
    if (f_lo * f_hi > 0.0) throw SolverError("bisect: endpoints do not bracket a root");
    if (f_lo == 0.0) return {lo, 0};
    if (f_hi == 0.0) return {hi, 0};
    for (int iter = 1; iter <= max_iter; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi || hi - lo <= xtol) return {mid, iter};
        const double f_mid = f(mid);
        if (f_mid == 0.0) return {mid, iter};
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return {0.5 * (lo + hi), max_iter};
}

}  // namespace censorlab::detail
