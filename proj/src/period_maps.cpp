#include "curlwave/period_maps.hpp"

#include "curlwave/errors.hpp"
#include "curlwave/potential.hpp"
#include "curlwave/quadrature.hpp"
#include "curlwave/roots.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace curlwave {

namespace pot = potential;

namespace {

constexpr double half_pi = 0.5 * std::numbers::pi;
constexpr double eps = std::numeric_limits<double>::epsilon();
// Below this distance from a centre the orbit is treated as the equilibrium.
constexpr double endpoint_snap = 1e-12;

quad::Options period_quadrature() {
    quad::Options opt;
    opt.abs_tol = 1e-300;
    opt.rel_tol = 1e-13;
    return opt;
}

[[noreturn]] void out_of_range(const char* what, const OdeCase& ode, double value) {
    std::ostringstream msg;
    msg << what << ": " << value << " outside the admissible range of the "
        << to_string(ode.variant) << " case (p=" << ode.p << ")";
    throw DomainError(msg.str());
}

// Both branches of the rogue orbit in the angle theta, w = ct sin^2, v = gap cos^2 - c sin^2.
struct RogueBranches {
    double p, c, ct, gap;

    double h(pot::Branch b, double theta, double* y = nullptr) const {
        const double s = std::sin(theta), co = std::cos(theta);
        const double w = ct * s * s;
        const double v = gap * co * co - c * s * s;
        const auto pt = pot::solve_branch(p, b, w, v);
        if (y) *y = pt.y;
        if (pt.dk == 0.0) return 0.5 / std::sqrt(p - 1.0);  // theta = 0, y = 1
        return std::sqrt(ct) * s / std::abs(pt.dk);
    }
};

double rogue_period(double p, double c) {
    const RogueBranches rb{p, c, c - pot::rogue_c_min(p), pot::level_gap(p)};
    const auto opt = period_quadrature();
    double total = 0.0;
    for (auto b : {pot::Branch::Inner, pot::Branch::Outer})
        total += quad::integrate([&](double th) { return rb.h(b, th); }, 0.0, half_pi, opt);
    return 4.0 * total;
}

double well_period(double p, int sign, double c) {
    auto f = [&](double th) {
        const double s = std::sin(th);
        const double x = pot::well_inverse(p, sign, c * s * s);
        return pot::well_ratio(p, sign, x);
    };
    return 8.0 * quad::integrate(f, 0.0, half_pi, period_quadrature());
}

}  // namespace

double equilibrium_period(const OdeCase& ode) {
    ode.validate();
    if (ode.variant == Variant::Rogue) return 2.0 * std::numbers::pi / std::sqrt(ode.p - 1.0);
    return 2.0 * std::numbers::pi;
}

double period(const OdeCase& ode, double c) {
    ode.validate();
    const double p = ode.p;
    switch (ode.variant) {
        case Variant::PlusFocusing:
            if (!(c >= 0.0) || !std::isfinite(c)) out_of_range("period", ode, c);
            if (c <= endpoint_snap) return equilibrium_period(ode);
            return well_period(p, +1, c);
        case Variant::MinusDefocusing:
            if (!(c >= 0.0 && c < pot::level_gap(p))) out_of_range("period", ode, c);
            if (c <= endpoint_snap) return equilibrium_period(ode);
            return well_period(p, -1, c);
        case Variant::Rogue: {
            const double cmin = pot::rogue_c_min(p);
            if (!(c >= cmin && c < 0.0)) out_of_range("period", ode, c);
            if (c - cmin <= endpoint_snap) return equilibrium_period(ode);
            return rogue_period(p, c);
        }
    }
    return 0.0;
}

double period_derivative_limit_rogue(double p) {
    return std::numbers::pi * p * (p + 3.0) / (12.0 * std::pow(p - 1.0, 1.5));
}

double period_derivative_rogue(double p, double c) {
    const OdeCase ode{Variant::Rogue, p};
    ode.validate();
    const double cmin = pot::rogue_c_min(p);
    if (!(c > cmin && c < 0.0)) out_of_range("period_derivative_rogue", ode, c);
    if (c - cmin <= endpoint_snap) return period_derivative_limit_rogue(p);
    const RogueBranches rb{p, c, c - cmin, pot::level_gap(p)};
    const pot::PhiSeries series(p);
    auto opt = period_quadrature();
    opt.rel_tol = 1e-11;
    double total = 0.0;
    for (auto b : {pot::Branch::Inner, pot::Branch::Outer}) {
        auto f = [&](double th) {
            double y = 1.0;
            const double h = rb.h(b, th, &y);
            if (y <= 0.0) return 0.0;
            const double co = std::cos(th);
            return co * co * std::pow(y, p - 2.0) * pot::phi_ratio(p, y, series) * h;
        };
        total += quad::integrate(f, 0.0, half_pi, opt);
    }
    return 16.0 * p * (p - 1.0) * total;
}

double invert_period(const OdeCase& ode, double s) {
    ode.validate();
    const double p = ode.p;
    const double s0 = equilibrium_period(ode);
    if (!std::isfinite(s)) out_of_range("invert_period", ode, s);
    auto solve = [&](double lo, double hi) {
        auto f = [&](double c) { return period(ode, c) - s; };
        const auto r = roots::brent(f, lo, hi, 1e-300, 400);
        if (!r.converged) throw NonConvergence("invert_period: Brent iteration did not converge");
        return r.x;
    };
    switch (ode.variant) {
        case Variant::PlusFocusing: {
            if (!(s > 0.0) || s > s0 * (1.0 + 4.0 * eps)) out_of_range("invert_period", ode, s);
            if (s >= s0 * (1.0 - 4.0 * eps)) return 0.0;
            double hi = 1.0;
            while (period(ode, hi) >= s) {
                hi *= 2.0;
                if (hi > 1e300) throw NonConvergence("invert_period: no bracket for the plus case");
            }
            return solve(0.0, hi);
        }
        case Variant::MinusDefocusing: {
            if (s < s0 * (1.0 - 4.0 * eps)) out_of_range("invert_period", ode, s);
            if (s <= s0 * (1.0 + 4.0 * eps)) return 0.0;
            const double gap = pot::level_gap(p);
            for (int k = 1; k <= 14; ++k) {
                const double hi = gap * (1.0 - std::pow(10.0, -k));
                if (period(ode, hi) > s) return solve(0.0, hi);
            }
            throw NonConvergence("invert_period: period beyond the resolvable range near the heteroclinic level");
        }
        case Variant::Rogue: {
            if (s < s0 * (1.0 - 4.0 * eps)) out_of_range("invert_period", ode, s);
            const double cmin = pot::rogue_c_min(p);
            if (s <= s0 * (1.0 + 4.0 * eps)) return cmin;
            for (int k = 1; k <= 14; ++k) {
                const double hi = cmin * std::pow(10.0, -k);
                if (period(ode, hi) > s) return solve(cmin, hi);
            }
            throw NonConvergence("invert_period: period beyond the resolvable range near the homoclinic level");
        }
    }
    return 0.0;
}

double phi_function(double p, double y) {
    if (!(y > 0.0)) throw DomainError("phi_function: y must be positive");
    OdeCase{Variant::Rogue, p}.validate();
    return pot::phi(p, y);
}

PeriodMap::PeriodMap(OdeCase ode) : case_(ode) { case_.validate(); }

std::pair<double, double> PeriodMap::domain() const { return level_range(case_); }

std::pair<double, double> PeriodMap::image() const {
    const double s0 = equilibrium_period(case_);
    if (case_.variant == Variant::PlusFocusing) return {0.0, s0};
    return {s0, std::numeric_limits<double>::infinity()};
}

double PeriodMap::derivative(double c) const {
    if (case_.variant != Variant::Rogue)
        throw DomainError("PeriodMap::derivative is only available for the rogue case");
    return period_derivative_rogue(case_.p, c);
}

}  // namespace curlwave
