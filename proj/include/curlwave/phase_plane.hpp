#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <utility>
#include <vector>

namespace curlwave {

/// Which reduced ODE:
///   PlusFocusing     y'' = -y - |y|^{p-1} y
///   MinusDefocusing  y'' = -y + |y|^{p-1} y
///   Rogue            y'' =  y - |y|^{p-1} y
enum class Variant { PlusFocusing, MinusDefocusing, Rogue };

struct OdeCase {
    Variant variant = Variant::Rogue;
    double p = 3.0;

    /// Throws DomainError unless p > 1.
    void validate() const;
};

struct PhasePoint {
    double xi = 0.0;   ///< position y
    double eta = 0.0;  ///< velocity y'
};

const char* to_string(Variant v);

/// y'' as a function of y for the given case.
double acceleration(const OdeCase& ode, double y);
/// d(y'')/dy.
double acceleration_slope(const OdeCase& ode, double y);

/// A_+-(xi, eta) = eta^2 + xi^2 +- 2/(p+1)|xi|^{p+1};
/// rogue: eta^2 - xi^2 + 2/(p+1)|xi|^{p+1}.
double first_integral(const OdeCase& ode, PhasePoint pt);

enum class OrbitKind {
    Equilibrium,  ///< constant solution, period is the linearised one (or infinity at a saddle)
    Periodic,     ///< half period between turning points, extended by reversibility
    Homoclinic,   ///< positive homoclinic of the rogue ODE, defined for all t
    Trajectory,   ///< non-closing arc, defined on its integration span only
};

/// Immutable solution of one of the reduced ODEs with dense output.
/// Safe to evaluate concurrently.
class Orbit {
public:
    const OdeCase& ode_case() const { return case_; }
    double level() const { return level_; }
    PhasePoint initial() const { return initial_; }
    /// Minimal period; infinity for homoclinics and saddles, NaN for open trajectories.
    double period() const { return period_; }
    OrbitKind kind() const { return kind_; }
    /// True when period() is the linearised period attached to an equilibrium.
    bool linearized_period() const { return kind_ == OrbitKind::Equilibrium; }
    /// max |A(y(t), y'(t)) - c| over the integrated steps.
    double max_drift() const { return max_drift_; }
    /// Span covered by integration (before periodic/symmetric extension).
    std::pair<double, double> span() const { return {t_begin_, t_end_}; }
    std::size_t node_count() const { return t_.size(); }

    PhasePoint operator()(double t) const;
    double position(double t) const { return (*this)(t).xi; }

private:
    friend class OrbitBuilder;
    Orbit() = default;

    PhasePoint dense(double t) const;
    PhasePoint tail(double t) const;

    OdeCase case_{};
    double level_ = 0.0;
    PhasePoint initial_{};
    double period_ = std::numeric_limits<double>::quiet_NaN();
    OrbitKind kind_ = OrbitKind::Trajectory;
    double max_drift_ = 0.0;
    double t_begin_ = 0.0;
    double t_end_ = 0.0;
    // consecutive turning points (eta = 0); periodic orbits are evaluated on
    // [turn_a_, turn_b_] and extended by time reversal, which keeps the
    // evaluator smooth across period boundaries
    double turn_a_ = 0.0;
    double turn_b_ = 0.0;
    // second-order nodes: time, position, velocity
    std::vector<double> t_, y_, v_;
    // homoclinic tail in u = log y, u' = -sqrt(1 - kappa e^{(p-1)u})
    std::vector<double> tail_t_, tail_u_;
};

using OrbitPtr = std::shared_ptr<const Orbit>;

struct IntegrationOptions {
    double tol = 1e-13;        ///< relative and absolute local tolerance
    double h_max = 0.05;
    bool stop_at_period = false;
};

/// Integrate from `initial` at t0 over [t0, t1]. A return to the initial point
/// (same crossing direction, refined on the dense output) sets the period and
/// makes the evaluator periodic. Equilibria come back as constant orbits with
/// the linearised period. Throws NonConvergence when the step controller fails.
OrbitPtr integrate_orbit(const OdeCase& ode, PhasePoint initial, double t0, double t1,
                         const IntegrationOptions& opt = {});

/// Rogue orbit through (a^{-1}(c), 0), a(x) = -x^2 + 2/(p+1) x^{p+1}.
/// c must lie in [(1-p)/(1+p), 0]; c = 0 gives the homoclinic.
OrbitPtr normalized_small_orbit(double p, double c, const IntegrationOptions& opt = {});

/// Positive homoclinic y0 of the rogue ODE with y0(0) = ((p+1)/2)^{1/(p-1)}, y0'(0) = 0.
/// Integrated on [0, t_max]; extended by evenness and by the linear log-tail beyond.
OrbitPtr homoclinic(double p, double t_max = 60.0, const IntegrationOptions& opt = {});

/// Plus/Minus: (0, N(c)) with N the maximal |y| on the orbit.
/// Rogue: the turning points (N_-(c), N_+(c)) of the positive orbit.
std::pair<double, double> amplitude_bounds(const OdeCase& ode, double c);

/// Admissible level range of each case: Plus [0, inf), Minus [0, (p-1)/(p+1)),
/// Rogue [(1-p)/(1+p), 0].
std::pair<double, double> level_range(const OdeCase& ode);

}  // namespace curlwave
