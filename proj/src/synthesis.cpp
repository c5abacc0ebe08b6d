#include "curlwave/synthesis.hpp"

#include "curlwave/errors.hpp"
#include "curlwave/period_maps.hpp"
#include "curlwave/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>

namespace curlwave {

namespace pot = potential;

const char* to_string(FieldKind k) {
    switch (k) {
        case FieldKind::BreatherPlus: return "breather_plus";
        case FieldKind::BreatherMinus: return "breather_minus";
        case FieldKind::DarkBreather: return "dark_breather";
        case FieldKind::DarkConstant: return "dark_constant";
        case FieldKind::RogueWave: return "rogue_wave";
        case FieldKind::RogueApproximantT: return "rogue_approximant";
        case FieldKind::Monochromatic: return "monochromatic";
        case FieldKind::ExplicitRogue: return "explicit_rogue";
    }
    return "?";
}

OrbitPtr OrbitCache::get(const OdeCase& ode, PhasePoint initial,
                         const std::function<OrbitPtr()>& build) {
    const Key key{static_cast<int>(ode.variant), ode.p, initial.xi, initial.eta};
    {
        std::shared_lock lock(mutex_);
        auto it = orbits_.find(key);
        if (it != orbits_.end()) return it->second;
    }
    OrbitPtr orbit = build();
    std::unique_lock lock(mutex_);
    return orbits_.emplace(key, std::move(orbit)).first->second;
}

std::size_t OrbitCache::size() const {
    std::shared_lock lock(mutex_);
    return orbits_.size();
}

LevelEntry LevelCache::get(double zeta, const std::function<LevelEntry(double)>& build) {
    {
        std::shared_lock lock(mutex_);
        auto it = entries_.find(zeta);
        if (it != entries_.end()) return it->second;
    }
    LevelEntry entry = build(zeta);
    std::unique_lock lock(mutex_);
    return entries_.emplace(zeta, std::move(entry)).first->second;
}

std::size_t LevelCache::size() const {
    std::shared_lock lock(mutex_);
    return entries_.size();
}

double WaveField::level(double zeta) const {
    return level_ ? level_(zeta) : std::numeric_limits<double>::quiet_NaN();
}

std::complex<double> WaveField::psi(double zeta, double t) const {
    return scale_ * profile_(zeta, t + shift(zeta));
}

FieldValue WaveField::operator()(const Vec3& x, double t) const {
    const Vec3 dir = eval_direction(geo_, x);
    const auto v = psi(geo_.g(x), t);
    FieldValue out;
    for (int i = 0; i < 3; ++i) {
        out.re[i] = v.real() * dir[i];
        out.im[i] = v.imag() * dir[i];
    }
    return out;
}

WaveField WaveField::scaled(double factor) const {
    WaveField w = *this;
    w.scale_ *= factor;
    return w;
}

WaveField WaveField::with_shift(PhaseShift a) const {
    WaveField w = *this;
    if (!a) return w;
    if (shift_) {
        PhaseShift old = shift_;
        w.shift_ = [old, a](double z) { return old(z) + a(z); };
    } else {
        w.shift_ = std::move(a);
    }
    return w;
}

std::size_t WaveField::cached_levels() const { return levels_ ? levels_->size() : 0; }

std::vector<Vec3> default_sample(const GeometryProfile& geo, double radius, int directions) {
    std::vector<Vec3> pts;
    const auto dirs = fibonacci_sphere(directions, 0.37);
    for (double R = 0.25; R <= radius + 1e-12; R += 0.25)
        for (const auto& d : dirs) {
            const Vec3 x{R * d[0], R * d[1], R * d[2]};
            if (!geo.singular(x)) pts.push_back(x);
        }
    return pts;
}

double linear_growth_constant(const GeometryProfile& geo, const PhaseShift& a,
                              const std::vector<Vec3>& sample) {
    if (!a || sample.empty()) return 0.0;
    double rmax = 0.0;
    for (const auto& x : sample) rmax = std::max(rmax, norm(x));
    double sup = 0.0, inner = 0.0, outer = 0.0;
    for (const auto& x : sample) {
        const double ax = norm(x);
        const double ratio = std::abs(a(geo.g(x))) / (1.0 + ax);
        if (!std::isfinite(ratio)) throw GrowthError("phase shift is not finite on the sample");
        sup = std::max(sup, ratio);
        if (ax <= 0.5 * rmax) inner = std::max(inner, ratio);
        if (ax >= 0.9 * rmax) outer = std::max(outer, ratio);
    }
    if (outer > 1.5 * inner + 1e-12) {
        std::ostringstream msg;
        msg << "phase shift grows faster than linearly: sup |a(g)|/(1+|x|) is " << outer
            << " near |x|=" << rmax << " against " << inner << " on |x|<=" << 0.5 * rmax;
        throw GrowthError(msg.str());
    }
    return sup;
}

class FieldBuilder {
public:
    static WaveField base(FieldKind kind, Variant eq, double p, const GeometryProfile& geo,
                          const CoefficientProfiles& coeffs) {
        OdeCase{eq, p}.validate();
        WaveField w;
        w.kind_ = kind;
        w.equation_ = eq;
        w.p_ = p;
        w.geo_ = geo;
        w.coeffs_ = coeffs;
        w.levels_ = std::make_shared<LevelCache>();
        return w;
    }

    // psi = tau~(zeta) y(sigma~(zeta) t) with a per-zeta orbit from `entry`.
    static void orbit_profile(WaveField& w, std::function<LevelEntry(double)> entry) {
        auto levels = w.levels_;
        const auto coeffs = w.coeffs_;
        const double p = w.p_;
        w.level_ = [levels, entry](double z) { return levels->get(z, entry).c; };
        w.profile_ = [levels, entry, coeffs, p](double z, double t) -> std::complex<double> {
            const LevelEntry e = levels->get(z, entry);
            if (!e.orbit) return 0.0;
            return coeffs.tau(z, p) * e.orbit->position(coeffs.sigma(z) * t);
        };
    }

    static void set_shift(WaveField& w, PhaseShift a) { w.shift_ = std::move(a); }
    static void set_period(WaveField& w, double T, double omega) {
        w.T_ = T;
        w.omega_ = omega;
    }
    static void set_profile(WaveField& w, WaveField::Profile f) { w.profile_ = std::move(f); }
    static void set_complex(WaveField& w) { w.complex_ = true; }
    static void set_reference(WaveField& w, std::shared_ptr<const WaveField> ref) {
        w.reference_ = std::move(ref);
    }
    static void set_rogue_metadata(WaveField& w, double delta_tilde, double growth) {
        w.delta_tilde_ = delta_tilde;
        w.growth_constant_ = growth;
    }
};

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

const std::vector<Vec3>& sample_or_default(const GeometryProfile& geo, const SynthesisOptions& opt,
                                           std::vector<Vec3>& storage) {
    if (!opt.sample.empty()) return opt.sample;
    storage = default_sample(geo);
    return storage;
}

void require_positive_coefficients(const CoefficientProfiles& c, const GeometryProfile& geo,
                                   const std::vector<Vec3>& sample) {
    for (const auto& x : sample) {
        const double z = geo.g(x);
        if (!(c.s(z) > 0.0 && c.q(z) > 0.0 && c.V(z) > 0.0)) {
            std::ostringstream msg;
            msg << "coefficients s, q, V must be positive; violated at zeta=" << z;
            throw DomainError(msg.str());
        }
    }
}

double sigma_inf_or_throw(const CoefficientProfiles& c) {
    if (!c.sigma_inf) throw MissingLimit("sigma_inf is required for this construction");
    if (!(*c.sigma_inf > 0.0)) throw DomainError("sigma_inf must be positive");
    return *c.sigma_inf;
}

double inf_sigma(const CoefficientProfiles& c, const GeometryProfile& geo,
                 const std::vector<Vec3>& sample) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& x : sample) m = std::min(m, c.sigma(geo.g(x)));
    return m;
}

// Normalised rogue family: level M(s) and its orbit.
LevelEntry rogue_entry(double p, double s, std::shared_ptr<OrbitCache> cache,
                       const IntegrationOptions& io) {
    const OdeCase ode{Variant::Rogue, p};
    LevelEntry e;
    e.c = invert_period(ode, s);
    const PhasePoint start{pot::a_inverse(p, e.c), 0.0};
    e.orbit = cache->get(ode, start, [&] { return normalized_small_orbit(p, e.c, io); });
    return e;
}

}  // namespace

WaveField synth_breather(int sign, double p, const GeometryProfile& geo,
                         const CoefficientProfiles& coeffs, const SynthesisOptions& opt,
                         CurveShift curve_shift) {
    if (sign != 1 && sign != -1) throw DomainError("breather sign must be +1 or -1");
    const Variant eq = sign > 0 ? Variant::PlusFocusing : Variant::MinusDefocusing;
    auto w = FieldBuilder::base(sign > 0 ? FieldKind::BreatherPlus : FieldKind::BreatherMinus, eq,
                                p, geo, coeffs);
    const double sigma_inf = sigma_inf_or_throw(coeffs);
    const double T = 2.0 * std::numbers::pi / sigma_inf;
    FieldBuilder::set_period(w, T, sigma_inf);

    std::vector<Vec3> storage;
    const auto& sample = sample_or_default(geo, opt, storage);
    require_positive_coefficients(coeffs, geo, sample);
    for (const auto& x : sample) {
        const double z = geo.g(x);
        const double s = 2.0 * std::numbers::pi * (coeffs.sigma(z) / sigma_inf);
        const bool ok = sign > 0 ? s <= 2.0 * std::numbers::pi * (1.0 + 4.0 * eps)
                                 : s >= 2.0 * std::numbers::pi * (1.0 - 4.0 * eps);
        if (!ok) {
            std::ostringstream msg;
            msg << "sigma~(zeta)T = " << s << " at zeta=" << z << " leaves the image of the "
                << (sign > 0 ? "plus" : "minus") << " period map; condition "
                << (sign > 0 ? "sigma <= sigma_inf" : "sigma >= sigma_inf") << " fails";
            throw DomainError(msg.str());
        }
    }

    const OdeCase ode{eq, p};
    auto cache = std::make_shared<OrbitCache>();
    const auto io = opt.integration;
    auto entry = [ode, coeffs, sigma_inf, cache, io, curve_shift](double z) {
        LevelEntry e;
        const double s = 2.0 * std::numbers::pi * (coeffs.sigma(z) / sigma_inf);
        e.c = invert_period(ode, s);
        if (e.c == 0.0) return e;
        const double t_limit = 4.0 * s + 10.0;
        IntegrationOptions o = io;
        o.stop_at_period = true;
        const PhasePoint start{0.0, std::sqrt(e.c)};
        e.orbit = cache->get(ode, start, [&] { return integrate_orbit(ode, start, 0.0, t_limit, o); });
        if (e.orbit->kind() != OrbitKind::Periodic)
            throw NonConvergence("breather orbit did not close within its expected period");
        if (curve_shift) {
            const PhasePoint moved = (*e.orbit)(curve_shift(e.c));
            e.orbit = cache->get(ode, moved,
                                 [&] { return integrate_orbit(ode, moved, 0.0, t_limit, o); });
            if (e.orbit->kind() != OrbitKind::Periodic)
                throw NonConvergence("shifted breather orbit did not close");
        }
        return e;
    };
    FieldBuilder::orbit_profile(w, entry);
    return w;
}

WaveField synth_dark_breather(double p, const GeometryProfile& geo, const CoefficientProfiles& coeffs,
                              double omega, const SynthesisOptions& opt) {
    auto w = FieldBuilder::base(FieldKind::DarkBreather, Variant::Rogue, p, geo, coeffs);
    const double sigma_inf = sigma_inf_or_throw(coeffs);
    if (!(omega > 0.0) || omega > sigma_inf * std::sqrt(p - 1.0) * (1.0 + 4.0 * eps)) {
        std::ostringstream msg;
        msg << "omega=" << omega << " must lie in (0, sigma_inf sqrt(p-1)] = (0, "
            << sigma_inf * std::sqrt(p - 1.0) << "]";
        throw DomainError(msg.str());
    }
    const double T = 2.0 * std::numbers::pi / omega;
    FieldBuilder::set_period(w, T, omega);

    std::vector<Vec3> storage;
    const auto& sample = sample_or_default(geo, opt, storage);
    require_positive_coefficients(coeffs, geo, sample);
    const double s_min = 2.0 * std::numbers::pi / std::sqrt(p - 1.0);
    for (const auto& x : sample) {
        const double z = geo.g(x);
        const double s = 2.0 * std::numbers::pi * (coeffs.sigma(z) / omega);
        if (s < s_min * (1.0 - 4.0 * eps)) {
            std::ostringstream msg;
            msg << "sigma~(zeta)T = " << s << " at zeta=" << z << " is below 2pi/sqrt(p-1) = " << s_min;
            throw DomainError(msg.str());
        }
    }

    auto cache = std::make_shared<OrbitCache>();
    const auto io = opt.integration;
    auto entry = [p, coeffs, omega, cache, io](double z) {
        return rogue_entry(p, 2.0 * std::numbers::pi * (coeffs.sigma(z) / omega), cache, io);
    };
    FieldBuilder::orbit_profile(w, entry);

    if (!coeffs.tau_inf) throw MissingLimit("tau_inf is required for the dark breather background");
    const double tau_inf = *coeffs.tau_inf;
    // background: constant coefficients with sigma = sigma_inf, tau = tau_inf
    auto bg_coeffs = CoefficientProfiles::constant(
        1.0, sigma_inf * sigma_inf, sigma_inf * sigma_inf / std::pow(tau_inf, p - 1.0));
    bg_coeffs.sigma_inf = sigma_inf;
    bg_coeffs.tau_inf = tau_inf;
    auto bg = FieldBuilder::base(FieldKind::DarkBreather, Variant::Rogue, p, geo, bg_coeffs);
    FieldBuilder::set_period(bg, T, omega);
    const double s_inf = 2.0 * std::numbers::pi * (sigma_inf / omega);
    auto bg_entry = [p, s_inf, cache, io](double) { return rogue_entry(p, s_inf, cache, io); };
    FieldBuilder::orbit_profile(bg, bg_entry);
    FieldBuilder::set_reference(w, std::make_shared<const WaveField>(std::move(bg)));
    return w;
}

WaveField synth_dark_constant(double p, const GeometryProfile& geo, const CoefficientProfiles& coeffs) {
    auto w = FieldBuilder::base(FieldKind::DarkConstant, Variant::Rogue, p, geo, coeffs);
    FieldBuilder::set_profile(w, [coeffs, p](double z, double) -> std::complex<double> {
        return coeffs.tau(z, p);
    });
    return w;
}

WaveField synth_rogue(double p, const GeometryProfile& geo, const CoefficientProfiles& coeffs,
                      PhaseShift a, const SynthesisOptions& opt) {
    auto w = FieldBuilder::base(FieldKind::RogueWave, Variant::Rogue, p, geo, coeffs);
    std::vector<Vec3> storage;
    const auto& sample = sample_or_default(geo, opt, storage);
    require_positive_coefficients(coeffs, geo, sample);
    const double sigma_star = inf_sigma(coeffs, geo, sample);
    if (!(sigma_star > 0.0) || !std::isfinite(sigma_star))
        throw DomainError("rogue wave requires inf sigma > 0 on the sample");
    if (coeffs.delta && !evaluate_conditions(geo, coeffs, p, sample).r)
        throw DomainError("tau~ exp(delta |x|) is unbounded on the sample; delta is larger than the decay rate of tau~");
    const double growth = linear_growth_constant(geo, a, sample);
    double dt = std::numeric_limits<double>::quiet_NaN();
    if (coeffs.delta) {
        const double delta = *coeffs.delta;
        dt = std::min(delta / 2.0, sigma_star / 2.0);
        if (growth > 0.0) dt = std::min(dt, delta / (4.0 * growth));
    }
    FieldBuilder::set_rogue_metadata(w, dt, growth);

    const OrbitPtr y0 = homoclinic(p, 60.0, opt.integration);
    FieldBuilder::set_profile(w, [y0, coeffs, p](double z, double t) -> std::complex<double> {
        return coeffs.tau(z, p) * y0->position(coeffs.sigma(z) * t);
    });
    if (a) FieldBuilder::set_shift(w, std::move(a));
    return w;
}

WaveField synth_rogue_approximant(double p, const GeometryProfile& geo,
                                  const CoefficientProfiles& coeffs, double T,
                                  const SynthesisOptions& opt) {
    auto w = FieldBuilder::base(FieldKind::RogueApproximantT, Variant::Rogue, p, geo, coeffs);
    std::vector<Vec3> storage;
    const auto& sample = sample_or_default(geo, opt, storage);
    require_positive_coefficients(coeffs, geo, sample);
    const double sigma_star = inf_sigma(coeffs, geo, sample);
    const double threshold = 2.0 * std::numbers::pi / (std::sqrt(p - 1.0) * sigma_star);
    if (!(T > threshold) || !std::isfinite(T)) {
        std::ostringstream msg;
        msg << "T=" << T << " must exceed 2pi/(sqrt(p-1) inf sigma) = " << threshold;
        throw DomainError(msg.str());
    }
    FieldBuilder::set_period(w, T, 2.0 * std::numbers::pi / T);
    auto cache = std::make_shared<OrbitCache>();
    const auto io = opt.integration;
    auto entry = [p, coeffs, T, cache, io](double z) {
        return rogue_entry(p, coeffs.sigma(z) * T, cache, io);
    };
    FieldBuilder::orbit_profile(w, entry);
    return w;
}

WaveField synth_explicit_rogue(double p, const GeometryProfile& geo, const CoefficientProfiles& coeffs) {
    auto w = FieldBuilder::base(FieldKind::ExplicitRogue, Variant::Rogue, p, geo, coeffs);
    const double peak = pot::homoclinic_peak(p);
    FieldBuilder::set_profile(w, [coeffs, p, peak](double z, double t) -> std::complex<double> {
        const double arg = 0.5 * (p - 1.0) * coeffs.sigma(z) * t;
        return coeffs.tau(z, p) * peak * std::pow(1.0 / std::cosh(arg), 2.0 / (p - 1.0));
    });
    return w;
}

WaveField synth_monochromatic(Variant equation, double p, const GeometryProfile& geo,
                              const CoefficientProfiles& coeffs, double omega,
                              const SynthesisOptions& opt) {
    if (!(omega >= 0.0) || !std::isfinite(omega)) throw DomainError("omega must be non-negative");
    auto w = FieldBuilder::base(FieldKind::Monochromatic, equation, p, geo, coeffs);
    FieldBuilder::set_complex(w);
    FieldBuilder::set_period(w, omega > 0.0 ? 2.0 * std::numbers::pi / omega
                                            : std::numeric_limits<double>::infinity(),
                             omega);
    auto base_of = [equation, coeffs, omega](double z) {
        const double r = omega * omega / (coeffs.q(z) / coeffs.s(z));
        switch (equation) {
            case Variant::Rogue: return 1.0 + r;
            case Variant::PlusFocusing: return r - 1.0;
            case Variant::MinusDefocusing: return 1.0 - r;
        }
        return 0.0;
    };
    std::vector<Vec3> storage;
    const auto& sample = sample_or_default(geo, opt, storage);
    require_positive_coefficients(coeffs, geo, sample);
    for (const auto& x : sample) {
        const double z = geo.g(x);
        if (base_of(z) < 0.0) {
            std::ostringstream msg;
            msg << "monochromatic profile undefined at zeta=" << z << ": base " << base_of(z)
                << " is negative for the " << to_string(equation) << " equation";
            throw DomainError(msg.str());
        }
    }
    FieldBuilder::set_profile(w, [base_of, coeffs, p, omega](double z, double t) {
        const double b = base_of(z);
        if (b < 0.0) throw DomainError("monochromatic profile base is negative");
        const double phi = coeffs.tau(z, p) * std::pow(b, 1.0 / (p - 1.0));
        return std::polar(phi, omega * t);
    });
    return w;
}

WaveField apply_phase_shift(const WaveField& field, PhaseShift a, const SynthesisOptions& opt) {
    if (!a) return field;
    const bool rogue =
        field.kind() == FieldKind::RogueWave || field.kind() == FieldKind::ExplicitRogue;
    if (rogue) {
        std::vector<Vec3> storage;
        const auto& sample = sample_or_default(field.geometry(), opt, storage);
        PhaseShift total = a;
        if (field.shifted()) total = [field, a](double z) { return field.shift(z) + a(z); };
        linear_growth_constant(field.geometry(), total, sample);
    }
    return field.with_shift(std::move(a));
}

}  // namespace curlwave
