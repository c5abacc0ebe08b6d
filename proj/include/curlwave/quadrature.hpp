#pragma once

#include <functional>

namespace curlwave::quad {

struct Options {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_intervals = 4000;
};

struct Result {
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
    bool converged = false;
};

using Integrand = std::function<double(double)>;

/// One 21-point Gauss-Kronrod panel on [a,b]; error is |K21 - G10|.
Result gauss_kronrod21(const Integrand& f, double a, double b);

/// Globally adaptive Gauss-Kronrod (bisect the panel with the largest error).
Result adaptive(const Integrand& f, double a, double b, const Options& opt = {});

/// Composite 10-point Gauss-Legendre, doubling the panel count until two
/// successive sums agree.
Result composite_gauss(const Integrand& f, double a, double b, const Options& opt = {});

/// adaptive() with composite_gauss() as fallback; throws QuadratureFailure
/// when neither meets the tolerance.
double integrate(const Integrand& f, double a, double b, const Options& opt = {});

}  // namespace curlwave::quad
