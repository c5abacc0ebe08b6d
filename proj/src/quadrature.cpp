#include "curlwave/quadrature.hpp"

#include "curlwave/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

namespace curlwave::quad {

namespace {

// QUADPACK qk21 abscissae and weights.
constexpr std::array<double, 11> xgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> wgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> wg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

double gauss10(const Integrand& f, double a, double b) {
    const double centr = 0.5 * (a + b);
    const double hlgth = 0.5 * (b - a);
    double sum = 0.0;
    for (int j = 0; j < 5; ++j) {
        const double absc = hlgth * xgk[2 * j + 1];
        sum += wg[j] * (f(centr - absc) + f(centr + absc));
    }
    return sum * hlgth;
}

}  // namespace

Result gauss_kronrod21(const Integrand& f, double a, double b) {
    const double centr = 0.5 * (a + b);
    const double hlgth = 0.5 * (b - a);
    const double fc = f(centr);
    double resg = 0.0;
    double resk = wgk[10] * fc;
    for (int j = 0; j < 5; ++j) {
        const int jtw = 2 * j + 1;
        const double absc = hlgth * xgk[jtw];
        const double f1 = f(centr - absc);
        const double f2 = f(centr + absc);
        resg += wg[j] * (f1 + f2);
        resk += wgk[jtw] * (f1 + f2);
    }
    for (int j = 0; j < 5; ++j) {
        const int jtwm1 = 2 * j;
        const double absc = hlgth * xgk[jtwm1];
        resk += wgk[jtwm1] * (f(centr - absc) + f(centr + absc));
    }
    Result r;
    r.value = resk * hlgth;
    r.error = std::abs((resk - resg) * hlgth);
    r.evaluations = 21;
    r.converged = std::isfinite(r.value);
    return r;
}

Result adaptive(const Integrand& f, double a, double b, const Options& opt) {
    if (a == b) return {0.0, 0.0, 0, true};
    std::priority_queue<Panel> heap;
    Result first = gauss_kronrod21(f, a, b);
    heap.push({a, b, first.value, first.error});
    double total = first.value;
    double total_err = first.error;
    int evals = first.evaluations;
    int intervals = 1;

    auto tolerance = [&] { return std::max(opt.abs_tol, opt.rel_tol * std::abs(total)); };

    while (total_err > tolerance() && intervals < opt.max_intervals) {
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // panel cannot be split further in floating point
            heap.push(worst);
            break;
        }
        Result left = gauss_kronrod21(f, worst.a, mid);
        Result right = gauss_kronrod21(f, mid, worst.b);
        evals += 42;
        ++intervals;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push({worst.a, mid, left.value, left.error});
        heap.push({mid, worst.b, right.value, right.error});
        if (!std::isfinite(total)) break;
    }
    // re-sum to shed the running-update round-off
    double value = 0.0, err = 0.0;
    std::vector<Panel> panels;
    panels.reserve(heap.size());
    while (!heap.empty()) {
        panels.push_back(heap.top());
        heap.pop();
    }
    std::sort(panels.begin(), panels.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
    for (const auto& p : panels) {
        value += p.value;
        err += p.error;
    }
    Result r;
    r.value = value;
    r.error = err;
    r.evaluations = evals;
    r.converged = std::isfinite(value) &&
                  err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(value));
    return r;
}

Result composite_gauss(const Integrand& f, double a, double b, const Options& opt) {
    Result r;
    double previous = gauss10(f, a, b);
    r.evaluations = 10;
    for (int panels = 2; panels <= (1 << 14); panels *= 2) {
        const double h = (b - a) / panels;
        double sum = 0.0;
        for (int i = 0; i < panels; ++i) sum += gauss10(f, a + i * h, a + (i + 1) * h);
        r.evaluations += 10 * panels;
        const double diff = std::abs(sum - previous);
        previous = sum;
        if (diff <= std::max(opt.abs_tol, opt.rel_tol * std::abs(sum))) {
            r.value = sum;
            r.error = diff;
            r.converged = std::isfinite(sum);
            return r;
        }
    }
    r.value = previous;
    r.error = std::numeric_limits<double>::infinity();
    return r;
}

double integrate(const Integrand& f, double a, double b, const Options& opt) {
    Result r = adaptive(f, a, b, opt);
    if (r.converged) return r.value;
    Result fallback = composite_gauss(f, a, b, opt);
    if (fallback.converged) return fallback.value;
    std::ostringstream msg;
    msg << "quadrature on [" << a << ", " << b << "] did not converge (estimated error "
        << r.error << ")";
    throw QuadratureFailure(msg.str());
}

}  // namespace curlwave::quad
