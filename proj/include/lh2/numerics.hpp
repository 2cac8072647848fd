#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace lh2::num {

// Monotone cubic (Fritsch-Butland) slope at a knot given the two adjacent
// secant slopes.  Returns 0 at local extrema so the interpolant never
// overshoots the data.
inline double pchip_slope(double d0, double d1) {
    if (d0 * d1 <= 0.0) return 0.0;
    return 2.0 * d0 * d1 / (d0 + d1);
}

// Cubic Hermite on [x0, x1] with values y0, y1 and endpoint slopes m0, m1.
inline double hermite(double x, double x0, double x1, double y0, double y1,
                      double m0, double m1) {
    const double h = x1 - x0;
    const double t = (x - x0) / h;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * m0 +
           (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * h * m1;
}

// One segment of a monotone cubic through 4 consecutive samples of a
// non-uniform grid; evaluates between xs[1] and xs[2].  Pass repeated end
// points at array boundaries.
inline double pchip_local(double x, const double* xs, const double* ys) {
    const double d0 = (xs[1] > xs[0]) ? (ys[1] - ys[0]) / (xs[1] - xs[0]) : 0.0;
    const double d1 = (ys[2] - ys[1]) / (xs[2] - xs[1]);
    const double d2 = (xs[3] > xs[2]) ? (ys[3] - ys[2]) / (xs[3] - xs[2]) : 0.0;
    const double m1 = (xs[1] > xs[0]) ? pchip_slope(d0, d1) : d1;
    const double m2 = (xs[3] > xs[2]) ? pchip_slope(d1, d2) : d1;
    return hermite(x, xs[1], xs[2], ys[1], ys[2], m1, m2);
}

// Brent root solve on [a, b] with f(a), f(b) of opposite sign.
inline double brent(const std::function<double(double)>& f, double a, double b,
                    double xtol, int max_iter = 120) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0)
        throw std::runtime_error("brent: root not bracketed");
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 0; it < max_iter; ++it) {
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol = 2.0 * 1e-16 * std::fabs(b) + 0.5 * xtol;
        const double m = 0.5 * (c - b);
        if (std::fabs(m) <= tol || fb == 0.0) return b;
        if (std::fabs(e) < tol || std::fabs(fa) <= std::fabs(fb)) {
            d = e = m;  // bisection
        } else {
            double p, q, r;
            const double s = fb / fa;
            if (a == c) {  // secant
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {  // inverse quadratic
                q = fa / fc;
                r = fb / fc;
                p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q; else p = -p;
            if (2.0 * p < std::fmin(3.0 * m * q - std::fabs(tol * q),
                                    std::fabs(e * q))) {
                e = d; d = p / q;
            } else {
                d = e = m;
            }
        }
        a = b; fa = fb;
        b += (std::fabs(d) > tol) ? d : (m > 0 ? tol : -tol);
        fb = f(b);
        if ((fb > 0) == (fc > 0)) { c = a; fc = fa; e = d = b - a; }
    }
    return b;
}

}  // namespace lh2::num
