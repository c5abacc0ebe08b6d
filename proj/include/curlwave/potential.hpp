#pragma once

// Level-set geometry shared by phase_plane and period_maps.
//
// Rogue case: k(y) = 1 - y^2 + 2/(p+1) (y^{p+1} - 1) has a double zero at
// y = 1 and equals (p-1)/(p+1) at y = 0 and at y = ((p+1)/2)^{1/(p-1)}.
// A level c of the first integral has turning points k(y) = c + (p-1)/(p+1).
//
// Plus/Minus cases: W(x) = x^2 +- 2/(p+1) |x|^{p+1}, turning point W(x) = c.

#include <array>

namespace curlwave::potential {

inline double kappa(double p) { return 2.0 / (p + 1.0); }
/// Level of the centres (+-1, 0) of the rogue ODE, (1-p)/(1+p).
inline double rogue_c_min(double p) { return (1.0 - p) / (1.0 + p); }
/// (p-1)/(p+1): k(0), also the heteroclinic level of the minus case.
inline double level_gap(double p) { return (p - 1.0) / (p + 1.0); }
/// ((p+1)/2)^{1/(p-1)}: largest amplitude on the positive homoclinic.
double homoclinic_peak(double p);

/// sign(y)|y|^p, defined for non-integer p.
double signed_power(double y, double p);

// ---- rogue potential ----

/// k(1 + d), accurate for small |d| (series around the double zero).
double k_offset(double p, double d);
double k(double p, double y);
/// k'(1 + d) = 2((1+d)^p - (1+d)), computed without cancellation near d = 0.
double dk_offset(double p, double d);
double ddk(double p, double y);

enum class Branch { Inner, Outer };  ///< y in [0,1] (k_-) or [1, peak] (k_+)

struct BranchPoint {
    double y = 1.0;
    double d = 0.0;   ///< y - 1, accurate on its own
    double dk = 0.0;  ///< k'(y)
};

/// Solve k(y) = w on the requested branch. The caller passes v = (p-1)/(p+1) - w
/// computed independently so that both ends of the branch stay well conditioned.
BranchPoint solve_branch(double p, Branch branch, double w, double v);

/// Inverse of a(x) = -x^2 + 2/(p+1) x^{p+1} on [1, peak]; c in [(1-p)/(1+p), 0].
double a_inverse(double p, double c);

// ---- plus / minus wells ----

/// sign = +1 for the focusing (plus) case, -1 for the defocusing (minus) case.
double well(double p, int sign, double x);
/// x >= 0 with W(x) = w.
double well_inverse(double p, int sign, double w);
/// sqrt(W)/W' written without the 0/0 at x = 0.
double well_ratio(double p, int sign, double x);

// ---- Phi / k'^4 ----

/// Truncated Taylor data of Phi and Phi/k'^4 around y = 1 for one exponent.
class PhiSeries {
public:
    static constexpr int order = 14;
    explicit PhiSeries(double p);
    double phi(double d) const;
    double ratio(double d) const;  ///< Phi(1+d)/k'(1+d)^4
    double ratio_at_one() const { return ratio_[0]; }

private:
    std::array<double, order + 1> phi_{};
    std::array<double, order + 1> ratio_{};
};

/// int_1^y t^{p-2} k(t) dt by adaptive quadrature.
double phi_inner_integral(double p, double y);
/// Phi(y) = 3 y^{2-p} k''(y) I(y) - k(y) k'(y); exact zero at y = 1.
double phi(double p, double y);
/// Seam between the series branch and the direct formula.
constexpr double phi_series_radius = 1e-3;
/// Phi(y)/k'(y)^4; series branch for |y - 1| < phi_series_radius.
double phi_ratio(double p, double y, const PhiSeries& series);

}  // namespace curlwave::potential
