#pragma once

#include "curlwave/geometry.hpp"
#include "curlwave/phase_plane.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <functional>
#include <map>
#include <memory>
#include <shared_mutex>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace curlwave {

enum class FieldKind {
    BreatherPlus,
    BreatherMinus,
    DarkBreather,
    DarkConstant,
    RogueWave,
    RogueApproximantT,
    Monochromatic,
    ExplicitRogue,
};
const char* to_string(FieldKind k);

struct FieldValue {
    Vec3 re{};
    Vec3 im{};
};

using PhaseShift = std::function<double(double)>;

/// Orbits keyed by (variant, p, initial point), compared exactly.
/// Concurrent readers, one writer at a time; a racing duplicate build is
/// discarded in favour of the entry already stored.
class OrbitCache {
public:
    OrbitPtr get(const OdeCase& ode, PhasePoint initial, const std::function<OrbitPtr()>& build);
    std::size_t size() const;

private:
    using Key = std::tuple<int, double, double, double>;
    mutable std::shared_mutex mutex_;
    std::map<Key, OrbitPtr> orbits_;
};

/// Per-zeta data of a field: first-integral level and the orbit used there.
struct LevelEntry {
    double c = 0.0;
    OrbitPtr orbit;  ///< null for the zero orbit and closed-form kinds
};

/// zeta -> (c, orbit), memoised by exact zeta under the same locking contract.
class LevelCache {
public:
    LevelEntry get(double zeta, const std::function<LevelEntry(double)>& build);
    std::size_t size() const;

private:
    mutable std::shared_mutex mutex_;
    std::unordered_map<double, LevelEntry> entries_;
};

/// U(x,t) = psi(g(x), t + a(g(x))) grad g / |grad g|. Immutable and thread-safe.
class WaveField {
public:
    using Profile = std::function<std::complex<double>(double zeta, double t)>;

    FieldKind kind() const { return kind_; }
    /// Reduced ODE obeyed by psi: the sign pattern of s psi'' +- q psi +- V |psi|^{p-1} psi = 0.
    Variant equation() const { return equation_; }
    double p() const { return p_; }
    /// Time period; infinity for rogue waves and stationary fields.
    double period() const { return T_; }
    double omega() const { return omega_; }
    bool periodic() const { return std::isfinite(T_); }
    bool is_complex() const { return complex_; }
    const GeometryProfile& geometry() const { return geo_; }
    const CoefficientProfiles& coefficients() const { return coeffs_; }
    /// Background U_inf for dark breathers; null otherwise.
    std::shared_ptr<const WaveField> reference() const { return reference_; }
    /// Space-time decay target min{delta/2, sigma*/2, delta/(4C)} (rogue waves); NaN otherwise.
    double delta_tilde() const { return delta_tilde_; }
    double growth_constant() const { return growth_constant_; }
    double shift(double zeta) const { return shift_ ? shift_(zeta) : 0.0; }
    bool shifted() const { return static_cast<bool>(shift_); }

    /// First-integral level c(zeta) used at this zeta (NaN for kinds without one).
    double level(double zeta) const;
    std::complex<double> psi(double zeta, double t) const;
    /// Throws SingularPoint on the singular set of g.
    FieldValue operator()(const Vec3& x, double t) const;

    /// Same field multiplied by `factor` (negative controls).
    WaveField scaled(double factor) const;
    /// Composes an additional shift: t -> t + a(zeta).
    WaveField with_shift(PhaseShift a) const;
    std::size_t cached_levels() const;

private:
    friend class FieldBuilder;
    WaveField() = default;

    FieldKind kind_ = FieldKind::RogueWave;
    Variant equation_ = Variant::Rogue;
    double p_ = 3.0;
    double T_ = std::numeric_limits<double>::infinity();
    double omega_ = 0.0;
    bool complex_ = false;
    double scale_ = 1.0;
    double delta_tilde_ = std::numeric_limits<double>::quiet_NaN();
    double growth_constant_ = 0.0;
    GeometryProfile geo_;
    CoefficientProfiles coeffs_;
    Profile profile_;
    std::function<double(double)> level_;
    PhaseShift shift_;
    std::shared_ptr<const WaveField> reference_;
    std::shared_ptr<LevelCache> levels_;
};

struct SynthesisOptions {
    /// Points on which the coefficient conditions (sigma~ vs sigma_inf, decay of tau~) and the growth of a are checked.
    /// Empty means default_sample().
    std::vector<Vec3> sample;
    IntegrationOptions integration{};
};

/// Rays through a Fibonacci sphere at radii 0.25, 0.5, ..., radius, off the singular set.
std::vector<Vec3> default_sample(const GeometryProfile& geo, double radius = 10.0, int directions = 64);

/// Initial point on the curve parametrised by c (Plus/Minus breathers).
/// Default: (0, sqrt(c)). A curve shift b maps it to the orbit point at time b(c).
using CurveShift = std::function<double(double c)>;

/// BreatherPlus (sign = +1) or BreatherMinus (sign = -1): T = 2 pi / sigma_inf,
/// c(zeta) = M_+-(sigma~(zeta) T). MissingLimit without sigma_inf, DomainError when
/// sigma~ T leaves the image of the period map on the sample.
WaveField synth_breather(int sign, double p, const GeometryProfile& geo,
                         const CoefficientProfiles& coeffs, const SynthesisOptions& opt = {},
                         CurveShift curve_shift = nullptr);

/// Dark breather with T = 2 pi / omega, c(zeta) = M(sigma~(zeta) T) on the normalised
/// family, and U_inf(x,t) = tau_inf y(sigma_inf t; M(sigma_inf T)) direction(x) attached.
WaveField synth_dark_breather(double p, const GeometryProfile& geo, const CoefficientProfiles& coeffs,
                              double omega, const SynthesisOptions& opt = {});

/// Stationary dark profile psi = tau~(zeta) (the equilibrium y = 1).
WaveField synth_dark_constant(double p, const GeometryProfile& geo, const CoefficientProfiles& coeffs);

/// Rogue wave psi = tau~ y0(sigma~ t) shifted by a. DomainError when inf sigma~ <= 0 on the
/// sample, GrowthError when a grows faster than linearly.
WaveField synth_rogue(double p, const GeometryProfile& geo, const CoefficientProfiles& coeffs,
                      PhaseShift a = nullptr, const SynthesisOptions& opt = {});

/// T-periodic approximant psi_T = tau~ y(sigma~ t; M(sigma~ T)) on the normalised family.
/// DomainError unless T > 2 pi / (sqrt(p-1) inf sigma~).
WaveField synth_rogue_approximant(double p, const GeometryProfile& geo,
                                  const CoefficientProfiles& coeffs, double T,
                                  const SynthesisOptions& opt = {});

/// psi = tau~ Y(sigma~ t) with the closed-form homoclinic
/// Y(t) = ((p+1)/2)^{1/(p-1)} sech^{2/(p-1)}((p-1)t/2).
WaveField synth_explicit_rogue(double p, const GeometryProfile& geo, const CoefficientProfiles& coeffs);

/// Complex field phi(g(x)) e^{i omega t} direction(x) with
///   rogue: phi = tau~ (1 + omega^2/sigma~^2)^{1/(p-1)}
///   plus:  phi = tau~ (omega^2/sigma~^2 - 1)^{1/(p-1)}
///   minus: phi = tau~ (1 - omega^2/sigma~^2)^{1/(p-1)}
/// DomainError when the base is negative on the sample.
WaveField synth_monochromatic(Variant equation, double p, const GeometryProfile& geo,
                              const CoefficientProfiles& coeffs, double omega,
                              const SynthesisOptions& opt = {});

/// U_a(x,t) = U(x, t + a(g(x))). Rogue kinds check the linear-growth bound.
WaveField apply_phase_shift(const WaveField& field, PhaseShift a, const SynthesisOptions& opt = {});

/// sup |a(g(x))| / (1 + |x|) over the sample; GrowthError when the outer part
/// of the sample exceeds 1.5 times the sup over |x| <= R/2.
double linear_growth_constant(const GeometryProfile& geo, const PhaseShift& a,
                              const std::vector<Vec3>& sample);

}  // namespace curlwave
