#pragma once

#include <functional>

namespace curlwave::roots {

struct Result {
    double x = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct NewtonOptions {
    double rel_tol = 1e-15;   ///< stop when |step| <= rel_tol*|x| + abs_tol
    double abs_tol = 1e-13;
    double min_slope = 1e-6;  ///< below this |f'| the step is a bisection
    int max_iter = 200;
};

/// Safeguarded Newton on a sign-changing bracket [lo, hi], started at x0
/// (midpoint when x0 lies outside the bracket). Bisection is used whenever
/// the Newton step leaves the bracket or the slope is too flat.
/// fdf(x, f, df) fills value and derivative.
Result safeguarded_newton(const std::function<void(double, double&, double&)>& fdf, double lo,
                          double hi, double x0, const NewtonOptions& opt = {});

/// Brent's method; converges to within 2*eps*|x| + x_tol/2.
Result brent(const std::function<double(double)>& f, double lo, double hi, double x_tol = 1e-15,
             int max_iter = 300);

/// Plain bisection, used as an independent oracle in tests and for coarse brackets.
Result bisection(const std::function<double(double)>& f, double lo, double hi,
                 double x_tol = 1e-13, int max_iter = 400);

}  // namespace curlwave::roots
