#include "curlwave/potential.hpp"

#include "curlwave/quadrature.hpp"
#include "curlwave/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace curlwave::potential {

namespace {

constexpr double series_cutoff = 0.05;

roots::NewtonOptions tight() {
    roots::NewtonOptions opt;
    opt.rel_tol = 4 * std::numeric_limits<double>::epsilon();
    opt.abs_tol = 1e-300;
    return opt;
}

// Generalised binomial coefficients binom(alpha, n), n = 0..count-1.
std::vector<double> binomials(double alpha, int count) {
    std::vector<double> b(count);
    b[0] = 1.0;
    for (int n = 1; n < count; ++n) b[n] = b[n - 1] * (alpha - n + 1) / n;
    return b;
}

std::vector<double> multiply(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = std::min(a.size(), b.size());
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; i + j < n; ++j) out[i + j] += a[i] * b[j];
    return out;
}

double horner(const double* coeff, int count, double d) {
    double acc = 0.0;
    for (int n = count - 1; n >= 0; --n) acc = acc * d + coeff[n];
    return acc;
}

double inner_well(double p, double y) { return y * y - kappa(p) * std::pow(y, p + 1.0); }

}  // namespace

double homoclinic_peak(double p) { return std::pow(0.5 * (p + 1.0), 1.0 / (p - 1.0)); }

double signed_power(double y, double p) {
    const double m = std::pow(std::abs(y), p);
    return y < 0.0 ? -m : m;
}

double k_offset(double p, double d) {
    if (std::abs(d) >= series_cutoff) return k(p, 1.0 + d);
    // k(1+d) = sum_{n>=2} (kappa*binom(p+1,n) - [n==2]) d^n
    const double kap = kappa(p);
    double binom = (p + 1.0) * p / 2.0;  // binom(p+1, 2)
    double dn = d * d;
    double sum = (kap * binom - 1.0) * dn;
    for (int n = 3; n < 80; ++n) {
        binom *= (p + 1.0 - n + 1.0) / n;
        dn *= d;
        const double term = kap * binom * dn;
        sum += term;
        if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

double k(double p, double y) {
    const double d = y - 1.0;
    if (std::abs(d) < series_cutoff) return k_offset(p, d);
    return 1.0 - y * y + kappa(p) * (std::pow(y, p + 1.0) - 1.0);
}

double dk_offset(double p, double d) {
    if (d > -0.5) return 2.0 * (1.0 + d) * std::expm1((p - 1.0) * std::log1p(d));
    const double y = 1.0 + d;
    return -2.0 * y * (1.0 - std::pow(y, p - 1.0));
}

double ddk(double p, double y) { return 2.0 * (p * std::pow(y, p - 1.0) - 1.0); }

BranchPoint solve_branch(double p, Branch branch, double w, double v) {
    const bool inner = branch == Branch::Inner;
    const double peak = homoclinic_peak(p);
    BranchPoint out;
    if (w <= 0.0) return out;  // centre
    if (w <= v) {
        auto fdf = [p, w](double d, double& f, double& df) {
            f = k_offset(p, d) - w;
            df = dk_offset(p, d);
        };
        const double guess = std::sqrt(w / (p - 1.0));
        const auto r = inner ? roots::safeguarded_newton(fdf, -1.0, 0.0, -guess, tight())
                             : roots::safeguarded_newton(fdf, 0.0, peak - 1.0, guess, tight());
        out.d = r.x;
        out.y = 1.0 + r.x;
    } else {
        if (v <= 0.0) {
            out.y = inner ? 0.0 : peak;
        } else {
            auto fdf = [p, v](double y, double& f, double& df) {
                f = inner_well(p, y) - v;
                df = 2.0 * y - 2.0 * std::pow(y, p);
            };
            const auto r = inner ? roots::safeguarded_newton(fdf, 0.0, 1.0, std::sqrt(v), tight())
                                 : roots::safeguarded_newton(fdf, 1.0, peak, peak, tight());
            out.y = r.x;
        }
        out.d = out.y - 1.0;
    }
    out.dk = std::abs(out.d) < 0.5 ? dk_offset(p, out.d)
                                   : -2.0 * out.y * (1.0 - std::pow(out.y, p - 1.0));
    return out;
}

double a_inverse(double p, double c) {
    const double cmin = rogue_c_min(p);
    c = std::clamp(c, cmin, 0.0);
    return solve_branch(p, Branch::Outer, c - cmin, -c).y;
}

double well(double p, int sign, double x) {
    const double ax = std::abs(x);
    return ax * ax * (1.0 + sign * kappa(p) * std::pow(ax, p - 1.0));
}

double well_inverse(double p, int sign, double w) {
    if (w <= 0.0) return 0.0;
    auto fdf = [p, sign, w](double x, double& f, double& df) {
        const double xp = std::pow(x, p - 1.0);
        f = x * x * (1.0 + sign * kappa(p) * xp) - w;
        df = 2.0 * x * (1.0 + sign * xp);
    };
    if (sign > 0) {
        // widened by a few ulps so the end values keep their signs after rounding
        const double hi = std::min(std::sqrt(w), std::pow(w / kappa(p), 1.0 / (p + 1.0))) *
                          (1.0 + 8.0 * std::numeric_limits<double>::epsilon());
        return roots::safeguarded_newton(fdf, 0.0, hi, hi, tight()).x;
    }
    if (w >= level_gap(p)) return 1.0;
    const double lo = std::sqrt(w) * (1.0 - 8.0 * std::numeric_limits<double>::epsilon());
    return roots::safeguarded_newton(fdf, lo, 1.0, std::sqrt(w), tight()).x;
}

double well_ratio(double p, int sign, double x) {
    const double xp = std::pow(std::abs(x), p - 1.0);
    return std::sqrt(1.0 + sign * kappa(p) * xp) / (2.0 * (1.0 + sign * xp));
}

PhiSeries::PhiSeries(double p) {
    const int n = order + 8;
    // a_n: Taylor coefficients of k(1+d)
    std::vector<double> a(n + 2, 0.0);
    const auto bp = binomials(p + 1.0, n + 2);
    for (int i = 2; i < n + 2; ++i) a[i] = kappa(p) * bp[i] - (i == 2 ? 1.0 : 0.0);
    std::vector<double> kk(n), k1(n), k2(n);
    for (int i = 0; i < n; ++i) {
        kk[i] = a[i];
        k1[i] = (i + 1) * a[i + 1];
        k2[i] = i + 2 < n + 2 ? (i + 1) * (i + 2) * a[i + 2] : 0.0;
    }
    const auto y_neg = binomials(2.0 - p, n);  // (1+d)^{2-p}
    const auto y_pos = binomials(p - 2.0, n);  // (1+d)^{p-2}
    const auto integrand = multiply(y_pos, kk);
    std::vector<double> inner(n, 0.0);
    for (int i = 1; i < n; ++i) inner[i] = integrand[i - 1] / i;
    auto first = multiply(multiply(y_neg, k2), inner);
    const auto second = multiply(kk, k1);
    std::vector<double> phi(n);
    for (int i = 0; i < n; ++i) phi[i] = 3.0 * first[i] - second[i];
    for (int i = 0; i < 4; ++i) phi[i] = 0.0;  // cancel exactly
    auto q = multiply(k1, k1);
    q = multiply(q, q);
    for (int i = 0; i <= order; ++i) phi_[i] = phi[i];
    for (int i = 0; i <= order; ++i) {
        double acc = phi[i + 4];
        for (int j = 0; j < i; ++j) acc -= ratio_[j] * q[i - j + 4];
        ratio_[i] = acc / q[4];
    }
}

double PhiSeries::phi(double d) const { return horner(phi_.data(), order + 1, d); }
double PhiSeries::ratio(double d) const { return horner(ratio_.data(), order + 1, d); }

double phi_inner_integral(double p, double y) {
    if (y == 1.0) return 0.0;
    quad::Options opt;
    opt.abs_tol = 1e-300;
    opt.rel_tol = 1e-13;
    auto f = [p](double t) { return std::pow(t, p - 2.0) * k(p, t); };
    if (y > 1.0) return quad::integrate(f, 1.0, y, opt);
    return -quad::integrate(f, y, 1.0, opt);
}

double phi(double p, double y) {
    const double d = y - 1.0;
    if (d == 0.0) return 0.0;
    if (std::abs(d) < phi_series_radius) return PhiSeries(p).phi(d);
    const double inner = phi_inner_integral(p, y);
    return 3.0 * std::pow(y, 2.0 - p) * ddk(p, y) * inner - k(p, y) * dk_offset(p, d);
}

double phi_ratio(double p, double y, const PhiSeries& series) {
    const double d = y - 1.0;
    if (std::abs(d) < phi_series_radius) return series.ratio(d);
    const double dk = std::abs(d) < 0.5 ? dk_offset(p, d) : -2.0 * y * (1.0 - std::pow(y, p - 1.0));
    const double dk2 = dk * dk;
    return phi(p, y) / (dk2 * dk2);
}

}  // namespace curlwave::potential
