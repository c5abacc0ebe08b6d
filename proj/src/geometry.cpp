#include "curlwave/geometry.hpp"

#include "curlwave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

namespace curlwave {

double norm(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

const char* to_string(Family f) {
    switch (f) {
        case Family::ConeAxial: return "cone_axial";
        case Family::ConeAbsAxial: return "cone_abs_axial";
        case Family::Torus: return "torus";
        case Family::Custom: return "custom";
    }
    return "?";
}

const char* to_string(AccumulationClass c) {
    switch (c) {
        case AccumulationClass::Empty: return "empty";
        case AccumulationClass::All: return "all";
        case AccumulationClass::Partial: return "partial";
    }
    return "?";
}

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive");
}

Bindings bind(const Vec3& x) {
    Bindings b;
    b.x1 = x[0];
    b.x2 = x[1];
    b.x3 = x[2];
    b.r = std::hypot(x[0], x[1]);
    return b;
}

}  // namespace

GeometryProfile GeometryProfile::cone_axial(double gamma, double r0) {
    require_positive(gamma, "gamma");
    if (!(r0 >= 0.0)) throw DomainError("r0 must be non-negative");
    GeometryProfile geo;
    geo.family_ = Family::ConeAxial;
    geo.gamma_ = gamma;
    geo.r0_ = r0;
    return geo;
}

GeometryProfile GeometryProfile::cone_abs_axial(double gamma, double r0) {
    auto geo = cone_axial(gamma, r0);
    geo.family_ = Family::ConeAbsAxial;
    return geo;
}

GeometryProfile GeometryProfile::torus(double r0) {
    if (!(r0 >= 0.0)) throw DomainError("r0 must be non-negative");
    GeometryProfile geo;
    geo.family_ = Family::Torus;
    geo.r0_ = r0;
    return geo;
}

GeometryProfile GeometryProfile::custom(Expression g, Expression G) {
    GeometryProfile geo;
    geo.family_ = Family::Custom;
    geo.g_expr_ = std::move(g);
    geo.G_expr_ = std::move(G);
    return geo;
}

double GeometryProfile::g(const Vec3& x) const {
    const double r = std::hypot(x[0], x[1]);
    switch (family_) {
        case Family::ConeAxial: return gamma_ * std::abs(r - r0_) + x[2];
        case Family::ConeAbsAxial: return gamma_ * std::abs(r - r0_) + std::abs(x[2]);
        case Family::Torus:
            if (r0_ == 0.0) return norm(x);
            return std::hypot(r - r0_, x[2]);
        case Family::Custom: return (*g_expr_)(bind(x));
    }
    return 0.0;
}

double GeometryProfile::G(double zeta) const {
    switch (family_) {
        case Family::ConeAxial:
        case Family::ConeAbsAxial: return std::sqrt(1.0 + gamma_ * gamma_);
        case Family::Torus: return 1.0;
        case Family::Custom: return (*G_expr_)(zeta);
    }
    return 1.0;
}

bool GeometryProfile::singular(const Vec3& x) const {
    const double r = std::hypot(x[0], x[1]);
    switch (family_) {
        case Family::ConeAxial: return r < tube_ || std::abs(r - r0_) < tube_;
        case Family::ConeAbsAxial:
            return r < tube_ || std::abs(r - r0_) < tube_ || std::abs(x[2]) < tube_;
        case Family::Torus:
            if (r0_ == 0.0) return norm(x) < tube_;
            return r < tube_ || std::hypot(r - r0_, x[2]) < tube_;
        case Family::Custom: {
            const double h = 1e-6 * (1.0 + norm(x));
            double n2 = 0.0;
            for (int i = 0; i < 3; ++i) {
                Vec3 a = x, b = x;
                a[i] += h;
                b[i] -= h;
                const double d = (g(a) - g(b)) / (2.0 * h);
                n2 += d * d;
            }
            return !(std::sqrt(n2) > tube_) || !std::isfinite(g(x));
        }
    }
    return false;
}

Vec3 GeometryProfile::grad_g(const Vec3& x) const {
    if (singular(x)) {
        std::ostringstream msg;
        msg << "point (" << x[0] << ", " << x[1] << ", " << x[2] << ") lies on the singular set of "
            << to_string(family_);
        throw SingularPoint(msg.str());
    }
    const double r = std::hypot(x[0], x[1]);
    switch (family_) {
        case Family::ConeAxial:
        case Family::ConeAbsAxial: {
            const double s = gamma_ * (r > r0_ ? 1.0 : -1.0) / r;
            const double z = family_ == Family::ConeAxial ? 1.0 : (x[2] > 0.0 ? 1.0 : -1.0);
            return {s * x[0], s * x[1], z};
        }
        case Family::Torus: {
            if (r0_ == 0.0) {
                const double n = norm(x);
                return {x[0] / n, x[1] / n, x[2] / n};
            }
            const double rho = std::hypot(r - r0_, x[2]);
            const double s = (r - r0_) / (rho * r);
            return {s * x[0], s * x[1], x[2] / rho};
        }
        case Family::Custom: {
            const double h = 1e-6 * (1.0 + norm(x));
            Vec3 out{};
            for (int i = 0; i < 3; ++i) {
                Vec3 a = x, b = x;
                a[i] += h;
                b[i] -= h;
                out[i] = (g(a) - g(b)) / (2.0 * h);
            }
            return out;
        }
    }
    return {0.0, 0.0, 0.0};
}

double GeometryProfile::support_radius(double R) const {
    switch (family_) {
        case Family::Torus: return std::max(R, 0.0) + r0_;
        case Family::ConeAbsAxial:
            // g >= min(gamma, 1)|x| - gamma r0
            return (std::max(R, 0.0) + gamma_ * r0_) / std::min(gamma_, 1.0);
        default:
            throw DomainError(std::string("g does not grow uniformly for the ") + to_string(family_) +
                              " family; no support radius");
    }
}

std::string GeometryProfile::describe() const {
    std::ostringstream out;
    out << to_string(family_);
    if (family_ == Family::Custom)
        out << " g=" << g_expr_->source() << " G=" << G_expr_->source();
    else if (family_ == Family::Torus)
        out << " r0=" << r0_;
    else
        out << " gamma=" << gamma_ << " r0=" << r0_;
    return out.str();
}

Vec3 eval_direction(const GeometryProfile& geo, const Vec3& x) {
    const Vec3 d = geo.grad_g(x);
    const double n = norm(d);
    if (!(n > 0.0) || !std::isfinite(n)) throw SingularPoint("gradient of g vanishes");
    return {d[0] / n, d[1] / n, d[2] / n};
}

CompatibilityReport check_compatibility(const GeometryProfile& geo, const std::vector<Vec3>& sample) {
    CompatibilityReport rep;
    rep.threshold = geo.analytic_gradient() ? 1e-8 : 1e-5;
    rep.inf_G = std::numeric_limits<double>::infinity();
    for (const auto& x : sample) {
        if (geo.singular(x)) {
            ++rep.skipped;
            continue;
        }
        const double G = geo.G(geo.g(x));
        const double defect = std::abs(norm(geo.grad_g(x)) - G) / G;
        rep.max_defect = std::max(rep.max_defect, std::isfinite(defect) ? defect : 1e300);
        rep.inf_G = std::min(rep.inf_G, G);
        ++rep.checked;
    }
    rep.pass = rep.checked > 0 && rep.max_defect <= rep.threshold && rep.inf_G > 0.0;
    return rep;
}

std::vector<Vec3> fibonacci_sphere(int count, double twist) {
    std::vector<Vec3> pts;
    pts.reserve(count);
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
        const double z = 1.0 - (2.0 * i + 1.0) / count;
        const double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = golden * i + twist;
        pts.push_back({rad * std::cos(phi), rad * std::sin(phi), z});
    }
    return pts;
}

AccumulationReport accumulation_set_probe(const GeometryProfile& geo, const std::vector<double>& radii,
                                          int points_per_sphere) {
    if (radii.empty() || !std::is_sorted(radii.begin(), radii.end()))
        throw DomainError("accumulation_set_probe: radii must be a non-empty increasing list");
    AccumulationReport rep;
    const auto dirs = fibonacci_sphere(points_per_sphere, 0.1);
    for (double R : radii) {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (const auto& d : dirs) {
            const double v = geo.g({R * d[0], R * d[1], R * d[2]});
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        rep.radii.push_back(R);
        rep.g_min.push_back(lo);
        rep.g_max.push_back(hi);
    }
    const double R = radii.back();
    const double lo = rep.g_min.back(), hi = rep.g_max.back();
    // growth proportional to the radius in one direction means no finite limit there
    const bool lo_escapes = lo >= 0.25 * R && (radii.size() < 2 || lo > rep.g_min.front());
    const bool lo_unbounded = lo <= -0.25 * R;
    const bool hi_unbounded = hi >= 0.25 * R;
    if (lo_escapes) {
        rep.classification = AccumulationClass::Empty;
    } else if (lo_unbounded && hi_unbounded) {
        rep.classification = AccumulationClass::All;
        rep.lower = -std::numeric_limits<double>::infinity();
        rep.upper = std::numeric_limits<double>::infinity();
    } else {
        rep.classification = AccumulationClass::Partial;
        rep.lower = lo_unbounded ? -std::numeric_limits<double>::infinity() : lo;
        rep.upper = hi_unbounded ? std::numeric_limits<double>::infinity() : hi;
    }
    return rep;
}

CoefficientProfiles CoefficientProfiles::constant(double s, double q, double V) {
    CoefficientProfiles c;
    c.s = [s](double) { return s; };
    c.q = [q](double) { return q; };
    c.V = [V](double) { return V; };
    auto str = [](double v) {
        std::ostringstream o;
        o.precision(17);
        o << v;
        return o.str();
    };
    c.s_source = str(s);
    c.q_source = str(q);
    c.V_source = str(V);
    return c;
}

CoefficientProfiles CoefficientProfiles::from_expressions(const Expression& s, const Expression& q,
                                                          const Expression& V) {
    CoefficientProfiles c;
    c.s = [s](double z) { return s(z); };
    c.q = [q](double z) { return q(z); };
    c.V = [V](double z) { return V(z); };
    c.s_source = s.source();
    c.q_source = q.source();
    c.V_source = V.source();
    return c;
}

bool bounded_on_sample(const std::vector<double>& radius, const std::vector<double>& value) {
    if (radius.empty()) return true;
    for (double v : value)
        if (!std::isfinite(v)) return false;
    const double rmax = *std::max_element(radius.begin(), radius.end());
    double inner = 0.0, outer = 0.0;
    for (std::size_t i = 0; i < radius.size(); ++i) {
        if (radius[i] > 2.0 * rmax / 3.0) outer = std::max(outer, value[i]);
        else inner = std::max(inner, value[i]);
    }
    return outer <= 2.0 * inner + 1e-12;
}

ConditionReport evaluate_conditions(const GeometryProfile& geo, const CoefficientProfiles& coeffs,
                                    double p, const std::vector<Vec3>& sample) {
    ConditionReport rep;
    rep.sigma_min = std::numeric_limits<double>::infinity();
    rep.sigma_max = 0.0;
    std::vector<double> radius, b1_vals, tau_vals, r_vals;
    const double delta = coeffs.delta.value_or(0.0);
    bool le = true, ge = true;
    for (const auto& x : sample) {
        const double z = geo.g(x);
        const double s = coeffs.s(z), q = coeffs.q(z), V = coeffs.V(z);
        if (!(s > 0.0 && q > 0.0 && V > 0.0)) {
            rep.positive = false;
            continue;
        }
        const double sig = std::sqrt(q / s);
        const double tau = std::pow(q / V, 1.0 / (p - 1.0));
        const double ax = norm(x);
        rep.sigma_min = std::min(rep.sigma_min, sig);
        rep.sigma_max = std::max(rep.sigma_max, sig);
        rep.tau_max = std::max(rep.tau_max, tau);
        radius.push_back(ax);
        tau_vals.push_back(tau);
        r_vals.push_back(tau * std::exp(delta * ax));
        if (coeffs.sigma_inf) {
            b1_vals.push_back(std::abs(sig - *coeffs.sigma_inf) * std::exp(delta * ax));
            le = le && sig <= *coeffs.sigma_inf;
            ge = ge && sig >= *coeffs.sigma_inf;
        }
    }
    const bool have = !radius.empty() && rep.positive;
    rep.b3 = have && bounded_on_sample(radius, tau_vals);
    rep.r = have && rep.sigma_min > 0.0 && coeffs.delta && bounded_on_sample(radius, r_vals);
    if (!r_vals.empty()) rep.r_sup = *std::max_element(r_vals.begin(), r_vals.end());
    if (coeffs.sigma_inf && have) {
        rep.b1 = coeffs.delta.has_value() && bounded_on_sample(radius, b1_vals);
        rep.b1_sup = b1_vals.empty() ? 0.0 : *std::max_element(b1_vals.begin(), b1_vals.end());
        rep.b2 = le;
        rep.b2_prime = ge;
    }
    return rep;
}

}  // namespace curlwave
