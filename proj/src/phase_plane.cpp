#include "curlwave/phase_plane.hpp"

#include "curlwave/errors.hpp"
#include "curlwave/ode.hpp"
#include "curlwave/potential.hpp"
#include "curlwave/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace curlwave {

namespace pot = potential;

void OdeCase::validate() const {
    if (!(p > 1.0) || !std::isfinite(p)) {
        std::ostringstream msg;
        msg << "exponent p must exceed 1 (got " << p << ")";
        throw DomainError(msg.str());
    }
}

const char* to_string(Variant v) {
    switch (v) {
        case Variant::PlusFocusing: return "plus";
        case Variant::MinusDefocusing: return "minus";
        case Variant::Rogue: return "rogue";
    }
    return "?";
}

double acceleration(const OdeCase& ode, double y) {
    const double nl = pot::signed_power(y, ode.p);
    switch (ode.variant) {
        case Variant::PlusFocusing: return -y - nl;
        case Variant::MinusDefocusing: return -y + nl;
        case Variant::Rogue: return y - nl;
    }
    return 0.0;
}

double acceleration_slope(const OdeCase& ode, double y) {
    const double s = ode.p * std::pow(std::abs(y), ode.p - 1.0);
    switch (ode.variant) {
        case Variant::PlusFocusing: return -1.0 - s;
        case Variant::MinusDefocusing: return -1.0 + s;
        case Variant::Rogue: return 1.0 - s;
    }
    return 0.0;
}

double first_integral(const OdeCase& ode, PhasePoint pt) {
    const double nl = pot::kappa(ode.p) * std::pow(std::abs(pt.xi), ode.p + 1.0);
    const double e2 = pt.eta * pt.eta;
    const double x2 = pt.xi * pt.xi;
    switch (ode.variant) {
        case Variant::PlusFocusing: return e2 + x2 + nl;
        case Variant::MinusDefocusing: return e2 + x2 - nl;
        case Variant::Rogue: return e2 - x2 + nl;
    }
    return 0.0;
}

std::pair<double, double> level_range(const OdeCase& ode) {
    switch (ode.variant) {
        case Variant::PlusFocusing: return {0.0, std::numeric_limits<double>::infinity()};
        case Variant::MinusDefocusing: return {0.0, pot::level_gap(ode.p)};
        case Variant::Rogue: return {pot::rogue_c_min(ode.p), 0.0};
    }
    return {0.0, 0.0};
}

namespace {

constexpr double homoclinic_join = 1.0;

struct Interp {
    const OdeCase& ode;
    // Hermite on one interval for both components.
    PhasePoint eval(double t0, double t1, double y0, double v0, double y1, double v1,
                    double t) const {
        const double a0 = acceleration(ode, y0), a1 = acceleration(ode, y1);
        const double j0 = acceleration_slope(ode, y0) * v0;
        const double j1 = acceleration_slope(ode, y1) * v1;
        double y, dy, v, dv;
        ode::Hermite5::eval(t0, t1, y0, v0, a0, y1, v1, a1, t, y, dy);
        ode::Hermite5::eval(t0, t1, v0, a0, j0, v1, a1, j1, t, v, dv);
        return {y, v};
    }
};

double tail_rate(double p, double u) {
    const double arg = 1.0 - pot::kappa(p) * std::exp((p - 1.0) * u);
    return -std::sqrt(std::max(arg, 0.0));
}

double tail_rate_slope(double p, double u) {
    const double e = pot::kappa(p) * std::exp((p - 1.0) * u);
    const double root = std::sqrt(std::max(1.0 - e, 1e-300));
    return (p - 1.0) * e / (2.0 * root);
}

}  // namespace

PhasePoint Orbit::dense(double t) const {
    if (t_.size() == 1) return {y_[0], v_[0]};
    auto it = std::upper_bound(t_.begin(), t_.end(), t);
    std::size_t i = it == t_.begin() ? 1 : static_cast<std::size_t>(it - t_.begin());
    if (i >= t_.size()) i = t_.size() - 1;
    return Interp{case_}.eval(t_[i - 1], t_[i], y_[i - 1], v_[i - 1], y_[i], v_[i], t);
}

PhasePoint Orbit::tail(double s) const {
    const double p = case_.p;
    double u;
    if (s >= tail_t_.back()) {
        const double ue = tail_u_.back();
        u = ue + tail_rate(p, ue) * (s - tail_t_.back());
    } else {
        auto it = std::upper_bound(tail_t_.begin(), tail_t_.end(), s);
        std::size_t i = it == tail_t_.begin() ? 1 : static_cast<std::size_t>(it - tail_t_.begin());
        if (i >= tail_t_.size()) i = tail_t_.size() - 1;
        const double u0 = tail_u_[i - 1], u1 = tail_u_[i];
        const double d0 = tail_rate(p, u0), d1 = tail_rate(p, u1);
        const double dd0 = tail_rate_slope(p, u0) * d0, dd1 = tail_rate_slope(p, u1) * d1;
        double du;
        ode::Hermite5::eval(tail_t_[i - 1], tail_t_[i], u0, d0, dd0, u1, d1, dd1, s, u, du);
    }
    const double y = std::exp(u);
    return {y, y * tail_rate(p, u)};
}

PhasePoint Orbit::operator()(double t) const {
    switch (kind_) {
        case OrbitKind::Equilibrium: return initial_;
        case OrbitKind::Periodic: {
            double r = std::fmod(t - turn_a_, period_);
            if (r < 0.0) r += period_;
            if (r <= 0.5 * period_) return dense(turn_a_ + r);
            PhasePoint pt = dense(turn_a_ + (period_ - r));
            pt.eta = -pt.eta;
            return pt;
        }
        case OrbitKind::Homoclinic: {
            const double s = std::abs(t);
            PhasePoint pt = s <= homoclinic_join ? dense(s) : tail(s);
            if (t < 0.0) pt.eta = -pt.eta;
            return pt;
        }
        case OrbitKind::Trajectory: {
            const double slack = 1e-12 * (1.0 + std::abs(t_end_ - t_begin_));
            if (t < std::min(t_begin_, t_end_) - slack || t > std::max(t_begin_, t_end_) + slack) {
                std::ostringstream msg;
                msg << "orbit evaluated at t=" << t << " outside its span [" << t_begin_ << ", "
                    << t_end_ << "]";
                throw DomainError(msg.str());
            }
            return dense(t);
        }
    }
    return initial_;
}

class OrbitBuilder {
public:
    static OrbitPtr equilibrium(const OdeCase& ode, PhasePoint pt) {
        auto o = std::shared_ptr<Orbit>(new Orbit());
        o->case_ = ode;
        o->initial_ = pt;
        o->level_ = first_integral(ode, pt);
        o->kind_ = OrbitKind::Equilibrium;
        const double slope = acceleration_slope(ode, pt.xi);
        o->period_ = slope < 0.0 ? 2.0 * std::numbers::pi / std::sqrt(-slope)
                                 : std::numeric_limits<double>::infinity();
        o->t_ = {0.0};
        o->y_ = {pt.xi};
        o->v_ = {pt.eta};
        return o;
    }

    static OrbitPtr integrate(const OdeCase& ode, PhasePoint initial, double t0, double t1,
                              const IntegrationOptions& opt) {
        auto o = std::shared_ptr<Orbit>(new Orbit());
        o->case_ = ode;
        o->initial_ = initial;
        o->level_ = first_integral(ode, initial);
        o->t_begin_ = t0;
        o->t_.push_back(t0);
        o->y_.push_back(initial.xi);
        o->v_.push_back(initial.eta);

        const double f0y = initial.eta;
        const double f0v = acceleration(ode, initial.xi);
        const double fnorm = std::hypot(f0y, f0v);
        auto event = [&](double y, double v) {
            return ((y - initial.xi) * f0y + (v - initial.eta) * f0v) / fnorm;
        };
        auto distance = [&](double y, double v) {
            return std::hypot(y - initial.xi, v - initial.eta);
        };
        const double scale = 1.0 + std::hypot(initial.xi, initial.eta);

        bool left = false;
        bool found = false;
        double excursion = 0.0;
        double drift = 0.0;
        const Interp interp{ode};

        auto rhs = [&ode](double, const ode::State<2>& s) {
            return ode::State<2>{s[1], acceleration(ode, s[0])};
        };
        ode::StepControl ctl;
        ctl.rel_tol = opt.tol;
        ctl.abs_tol = opt.tol;
        ctl.h_max = opt.h_max;
        ctl.h_init = std::min(1e-3, opt.h_max);

        auto on_step = [&](const ode::Step<2>& st) {
            const double y1 = st.y1[0], v1 = st.y1[1];
            drift = std::max(drift, std::abs(first_integral(ode, {y1, v1}) - o->level_));
            if (!found) {
                o->t_.push_back(st.t1);
                o->y_.push_back(y1);
                o->v_.push_back(v1);
                const double e_prev = event(st.y0[0], st.y0[1]);
                const double e1 = event(y1, v1);
                const double d1 = distance(y1, v1);
                excursion = std::max(excursion, d1);
                if (!left && e1 < 0.0) left = true;
                if (left && e_prev < 0.0 && e1 >= 0.0 && d1 < 0.5 * excursion) {
                    auto e_at = [&](double t) {
                        const auto pt = interp.eval(st.t0, st.t1, st.y0[0], st.y0[1], y1, v1, t);
                        return event(pt.xi, pt.eta);
                    };
                    const auto root = roots::brent(e_at, st.t0, st.t1, 1e-15);
                    const auto pt =
                        interp.eval(st.t0, st.t1, st.y0[0], st.y0[1], y1, v1, root.x);
                    if (distance(pt.xi, pt.eta) <= 1e-6 * scale) {
                        found = true;
                        o->period_ = root.x - t0;
                        if (opt.stop_at_period) return false;
                    }
                }
            }
            return true;
        };
        const double reached =
            ode::dopri5<2>(rhs, t0, ode::State<2>{initial.xi, initial.eta}, t1, ctl, on_step);
        o->t_end_ = found ? t0 + o->period_ : reached;
        o->max_drift_ = drift;
        o->kind_ = found ? OrbitKind::Periodic : OrbitKind::Trajectory;
        if (found) locate_turning_points(*o);
        return o;
    }

    // First two zeros of the velocity on the stored nodes, refined on the interpolant.
    static void locate_turning_points(Orbit& o) {
        const Interp interp{o.case_};
        std::vector<double> zeros;
        if (o.v_.front() == 0.0) zeros.push_back(o.t_.front());
        for (std::size_t i = 1; i < o.t_.size() && zeros.size() < 2; ++i) {
            const double va = o.v_[i - 1], vb = o.v_[i];
            if (vb == 0.0 && i + 1 < o.t_.size()) {
                zeros.push_back(o.t_[i]);
                continue;
            }
            if (va == 0.0 || (va > 0.0) == (vb > 0.0)) continue;
            auto v_at = [&](double t) {
                return interp.eval(o.t_[i - 1], o.t_[i], o.y_[i - 1], va, o.y_[i], vb, t).eta;
            };
            zeros.push_back(roots::brent(v_at, o.t_[i - 1], o.t_[i], 1e-15).x);
        }
        if (zeros.size() < 2)
            throw NonConvergence("periodic orbit: could not locate two turning points");
        o.turn_a_ = zeros[0];
        o.turn_b_ = zeros[1];
        o.period_ = 2.0 * (zeros[1] - zeros[0]);
    }

    static OrbitPtr homoclinic(double p, double t_max, const IntegrationOptions& opt) {
        const OdeCase ode{Variant::Rogue, p};
        const PhasePoint start{pot::homoclinic_peak(p), 0.0};
        auto core = integrate(ode, start, 0.0, homoclinic_join, opt);
        auto o = std::shared_ptr<Orbit>(new Orbit(*core));
        o->kind_ = OrbitKind::Homoclinic;
        o->period_ = std::numeric_limits<double>::infinity();
        o->level_ = 0.0;

        const double u0 = std::log(o->y_.back());
        o->tail_t_.push_back(homoclinic_join);
        o->tail_u_.push_back(u0);
        auto rhs = [p](double, const ode::State<1>& u) { return ode::State<1>{tail_rate(p, u[0])}; };
        ode::StepControl ctl;
        ctl.rel_tol = opt.tol;
        ctl.abs_tol = opt.tol;
        ctl.h_max = 4.0 * opt.h_max;
        ctl.h_init = 1e-3;
        const double t_stop = std::max(t_max, 2.0 * homoclinic_join);
        ode::dopri5<1>(rhs, homoclinic_join, ode::State<1>{u0}, t_stop, ctl,
                       [&](const ode::Step<1>& st) {
                           o->tail_t_.push_back(st.t1);
                           o->tail_u_.push_back(st.y1[0]);
                           return true;
                       });
        o->t_end_ = t_stop;
        o->max_drift_ = std::max(core->max_drift(),
                                 std::abs(first_integral(ode, (*o)(homoclinic_join + 1e-9))));
        return o;
    }
};

OrbitPtr integrate_orbit(const OdeCase& ode, PhasePoint initial, double t0, double t1,
                         const IntegrationOptions& opt) {
    ode.validate();
    if (!(opt.tol > 0.0)) throw DomainError("integrate_orbit: tolerance must be positive");
    if (!std::isfinite(initial.xi) || !std::isfinite(initial.eta))
        throw DomainError("integrate_orbit: initial point must be finite");
    const double accel = acceleration(ode, initial.xi);
    if (std::abs(initial.eta) <= 1e-300 && std::abs(accel) <= 1e-15 * (1.0 + std::abs(initial.xi)))
        return OrbitBuilder::equilibrium(ode, initial);
    // the positive homoclinic never returns; hand out the symmetric evaluator
    if (ode.variant == Variant::Rogue && initial.eta == 0.0 && t0 == 0.0 &&
        initial.xi == pot::homoclinic_peak(ode.p))
        return OrbitBuilder::homoclinic(ode.p, std::max(std::abs(t1), 60.0), opt);
    return OrbitBuilder::integrate(ode, initial, t0, t1, opt);
}

OrbitPtr homoclinic(double p, double t_max, const IntegrationOptions& opt) {
    OdeCase{Variant::Rogue, p}.validate();
    return OrbitBuilder::homoclinic(p, t_max, opt);
}

OrbitPtr normalized_small_orbit(double p, double c, const IntegrationOptions& opt) {
    const OdeCase ode{Variant::Rogue, p};
    ode.validate();
    const double cmin = pot::rogue_c_min(p);
    if (!(c >= cmin && c <= 0.0)) {
        std::ostringstream msg;
        msg << "normalized_small_orbit: level " << c << " outside [" << cmin << ", 0]";
        throw DomainError(msg.str());
    }
    if (c == 0.0) return homoclinic(p, 60.0, opt);
    const PhasePoint start{pot::a_inverse(p, c), 0.0};
    if (start.xi == 1.0) return OrbitBuilder::equilibrium(ode, start);
    IntegrationOptions o = opt;
    o.stop_at_period = true;
    auto orbit = integrate_orbit(ode, start, 0.0, 1e4, o);
    if (orbit->kind() != OrbitKind::Periodic && orbit->kind() != OrbitKind::Equilibrium)
        throw NonConvergence("normalized_small_orbit: no return to the initial point detected");
    return orbit;
}

std::pair<double, double> amplitude_bounds(const OdeCase& ode, double c) {
    ode.validate();
    const double p = ode.p;
    const auto [lo, hi] = level_range(ode);
    auto reject = [&] {
        std::ostringstream msg;
        msg << "amplitude_bounds: level " << c << " outside the admissible range of the "
            << to_string(ode.variant) << " case";
        throw DomainError(msg.str());
    };
    switch (ode.variant) {
        case Variant::PlusFocusing:
            if (!(c >= 0.0) || !std::isfinite(c)) reject();
            return {0.0, pot::well_inverse(p, +1, c)};
        case Variant::MinusDefocusing:
            if (!(c >= 0.0 && c < hi)) reject();
            return {0.0, pot::well_inverse(p, -1, c)};
        case Variant::Rogue: {
            if (!(c >= lo && c <= 0.0)) reject();
            const double w = c - lo;
            const auto inner = pot::solve_branch(p, pot::Branch::Inner, w, -c);
            const auto outer = pot::solve_branch(p, pot::Branch::Outer, w, -c);
            return {inner.y, outer.y};
        }
    }
    return {0.0, 0.0};
}

}  // namespace curlwave
