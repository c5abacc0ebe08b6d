#include "curlwave/roots.hpp"

#include "curlwave/errors.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace curlwave::roots {

Result safeguarded_newton(const std::function<void(double, double&, double&)>& fdf, double lo,
                          double hi, double x0, const NewtonOptions& opt) {
    double flo, dlo, fhi, dhi;
    fdf(lo, flo, dlo);
    if (flo == 0.0) return {lo, 0, true};
    fdf(hi, fhi, dhi);
    if (fhi == 0.0) return {hi, 0, true};
    if ((flo > 0.0) == (fhi > 0.0)) throw NonConvergence("safeguarded_newton: root not bracketed");
    // orient so that f(xl) < 0 < f(xh)
    double xl = lo, xh = hi;
    if (flo > 0.0) std::swap(xl, xh);

    double x = (x0 > std::min(lo, hi) && x0 < std::max(lo, hi)) ? x0 : 0.5 * (lo + hi);
    double dx_old = std::abs(hi - lo);
    double dx = dx_old;
    double f, df;
    fdf(x, f, df);
    if (f == 0.0) return {x, 0, true};
    for (int it = 1; it <= opt.max_iter; ++it) {
        if (f < 0.0)
            xl = x;
        else
            xh = x;
        const bool newton_ok = std::abs(df) > opt.min_slope &&
                               ((x - xh) * df - f) * ((x - xl) * df - f) < 0.0 &&
                               std::abs(2.0 * f) < std::abs(dx_old * df);
        dx_old = dx;
        const double x_prev = x;
        if (newton_ok) {
            dx = f / df;
            x -= dx;
        } else {
            dx = 0.5 * (xh - xl);
            x = xl + dx;
        }
        if (x == x_prev) return {x, it, true};
        const double tol = opt.rel_tol * std::abs(x) + opt.abs_tol;
        fdf(x, f, df);
        if (f == 0.0 || std::abs(dx) <= tol) return {x, it, true};
        if (std::abs(xh - xl) <= tol && !newton_ok) return {x, it, true};
    }
    return {x, opt.max_iter, false};
}

Result brent(const std::function<double(double)>& f, double a, double b, double x_tol,
             int max_iter) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return {a, 0, true};
    if (fb == 0.0) return {b, 0, true};
    if ((fa > 0.0) == (fb > 0.0)) throw NonConvergence("brent: root not bracketed");
    constexpr double eps = std::numeric_limits<double>::epsilon();
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 1; it <= max_iter; ++it) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * x_tol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return {b, it, true};
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q, r;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                r = fb / fc;
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
            const double min2 = std::abs(e * q);
            if (2.0 * p < std::min(min1, min2)) {
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
        b += std::abs(d) > tol1 ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
    }
    return {b, max_iter, false};
}

Result bisection(const std::function<double(double)>& f, double lo, double hi, double x_tol,
                 int max_iter) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return {lo, 0, true};
    if (fhi == 0.0) return {hi, 0, true};
    if ((flo > 0.0) == (fhi > 0.0)) throw NonConvergence("bisection: root not bracketed");
    for (int it = 1; it <= max_iter; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (std::abs(hi - lo) <= x_tol || mid == lo || mid == hi) return {mid, it, true};
        const double fm = f(mid);
        if (fm == 0.0) return {mid, it, true};
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return {0.5 * (lo + hi), max_iter, false};
}

}  // namespace curlwave::roots
