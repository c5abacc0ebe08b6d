#pragma once

#include "curlwave/expression.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace curlwave {

using Vec3 = std::array<double, 3>;

double norm(const Vec3& v);

enum class Family { ConeAxial, ConeAbsAxial, Torus, Custom };
const char* to_string(Family f);

/// Level-set function g with its eikonal function G (|grad g| = G(g)).
/// Built-ins have analytic gradients; custom g uses central differences.
class GeometryProfile {
public:
    /// gamma |r - r0| + x3, G = sqrt(1 + gamma^2)
    static GeometryProfile cone_axial(double gamma, double r0 = 0.0);
    /// gamma |r - r0| + |x3|, G = sqrt(1 + gamma^2)
    static GeometryProfile cone_abs_axial(double gamma, double r0 = 0.0);
    /// sqrt((r - r0)^2 + x3^2), G = 1; r0 = 0 is |x|
    static GeometryProfile torus(double r0 = 0.0);
    /// g from an expression in x1, x2, x3, r; G from an expression in zeta.
    static GeometryProfile custom(Expression g, Expression G);

    Family family() const { return family_; }
    double gamma() const { return gamma_; }
    double r0() const { return r0_; }
    bool analytic_gradient() const { return family_ != Family::Custom; }
    double tube() const { return tube_; }
    void set_tube(double radius) { tube_ = radius; }

    double g(const Vec3& x) const;
    double G(double zeta) const;
    /// Throws SingularPoint on the singular set.
    Vec3 grad_g(const Vec3& x) const;
    /// Within the exclusion tube of the singular set (axis, kinks, centre line).
    bool singular(const Vec3& x) const;
    /// Whether g -> infinity uniformly as |x| -> infinity, so that g >= R
    /// outside a ball.
    bool coercive() const { return family_ == Family::Torus || family_ == Family::ConeAbsAxial; }
    /// Radius rho with g(x) >= R whenever |x| >= rho (coercive families only).
    double support_radius(double R) const;
    std::string describe() const;

private:
    Family family_ = Family::Torus;
    double gamma_ = 1.0;
    double r0_ = 0.0;
    double tube_ = 1e-6;
    std::optional<Expression> g_expr_, G_expr_;
};

/// grad g / |grad g|; SingularPoint on the singular set.
Vec3 eval_direction(const GeometryProfile& geo, const Vec3& x);

struct CompatibilityReport {
    double max_defect = 0.0;  ///< max | |grad g| - G(g) | / G(g)
    double threshold = 0.0;   ///< 1e-8 analytic, 1e-5 finite differences
    double inf_G = 0.0;
    std::size_t checked = 0;
    std::size_t skipped = 0;  ///< singular samples
    bool pass = false;
};
CompatibilityReport check_compatibility(const GeometryProfile& geo, const std::vector<Vec3>& sample);

enum class AccumulationClass { Empty, All, Partial };
const char* to_string(AccumulationClass c);

struct AccumulationReport {
    std::vector<double> radii, g_min, g_max;  ///< range of g on each sphere
    AccumulationClass classification = AccumulationClass::Partial;
    double lower = 0.0, upper = 0.0;  ///< estimated hull of D (Partial only)
};
/// Range of g on spheres |x| = radius (Fibonacci lattice) and a classification
/// of the set D of finite accumulation values of g at infinity.
AccumulationReport accumulation_set_probe(const GeometryProfile& geo, const std::vector<double>& radii,
                                          int points_per_sphere = 2000);

/// Quasi-uniform points on the unit sphere, rotated by `twist` about e3.
std::vector<Vec3> fibonacci_sphere(int count, double twist = 0.0);

using Profile = std::function<double(double)>;

/// s~, q~, V~ as functions of zeta, with the derived sigma~ and tau~.
struct CoefficientProfiles {
    Profile s, q, V;
    std::string s_source = "1", q_source = "1", V_source = "1";
    std::optional<double> sigma_inf, tau_inf, delta;

    static CoefficientProfiles constant(double s, double q, double V);
    static CoefficientProfiles from_expressions(const Expression& s, const Expression& q,
                                                const Expression& V);

    double sigma(double zeta) const { return std::sqrt(q(zeta) / s(zeta)); }
    double tau(double zeta, double p) const { return std::pow(q(zeta) / V(zeta), 1.0 / (p - 1.0)); }
};

/// Assumptions on the coefficients evaluated on a sample of points.
struct ConditionReport {
    bool positive = true;        ///< s, q, V > 0
    double sigma_min = 0.0, sigma_max = 0.0;
    double tau_max = 0.0;
    bool b1 = false;             ///< sigma_inf set and |sigma - sigma_inf| e^{delta|x|} bounded
    bool b2 = false;             ///< sigma <= sigma_inf
    bool b2_prime = false;       ///< sigma >= sigma_inf
    bool b3 = false;             ///< tau bounded
    bool r = false;              ///< inf sigma > 0 and tau e^{delta|x|} bounded
    double b1_sup = 0.0, r_sup = 0.0;
};
ConditionReport evaluate_conditions(const GeometryProfile& geo, const CoefficientProfiles& coeffs,
                                    double p, const std::vector<Vec3>& sample);

/// Bounded on a finite sample: the sup over the outer third of the radii does
/// not exceed twice the sup over the rest.
bool bounded_on_sample(const std::vector<double>& radius, const std::vector<double>& value);

}  // namespace curlwave
