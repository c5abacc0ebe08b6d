#pragma once

#include "curlwave/phase_plane.hpp"

#include <utility>

namespace curlwave {

/// Limit of the minimal period as the orbit shrinks to its centre:
/// 2*pi for Plus/Minus, 2*pi/sqrt(p-1) for Rogue.
double equilibrium_period(const OdeCase& ode);

/// Minimal period of the orbit on the level A = c.
/// Throws DomainError unless c lies in the admissible range (endpoints allowed
/// where the orbit is an equilibrium).
double period(const OdeCase& ode, double c);

/// L'(c) of the rogue period map for c in ((1-p)/(1+p), 0).
double period_derivative_rogue(double p, double c);
/// lim L'(c) at c = (1-p)/(1+p): pi p (p+3) / (12 (p-1)^{3/2}).
double period_derivative_limit_rogue(double p);

/// c with period(ode, c) = s. Throws DomainError for s outside the closed image
/// and NonConvergence when s is beyond what double precision resolves
/// (periods of orbits closer than ~1e-14 to the homoclinic or heteroclinic level).
double invert_period(const OdeCase& ode, double s);

/// Phi(y) = 3 y^{2-p} k''(y) int_1^y t^{p-2} k(t) dt - k(y) k'(y); Phi(1) = 0.
double phi_function(double p, double y);

/// Period map of one case bundled with its domain and image.
class PeriodMap {
public:
    explicit PeriodMap(OdeCase ode);

    const OdeCase& ode_case() const { return case_; }
    /// Admissible levels (closed at the equilibrium end).
    std::pair<double, double> domain() const;
    /// Closure of the image of the period map.
    std::pair<double, double> image() const;
    bool increasing() const { return case_.variant != Variant::PlusFocusing; }

    double eval(double c) const { return period(case_, c); }
    /// Rogue case only; DomainError otherwise.
    double derivative(double c) const;
    double inverse(double s) const { return invert_period(case_, s); }

private:
    OdeCase case_;
};

}  // namespace curlwave
