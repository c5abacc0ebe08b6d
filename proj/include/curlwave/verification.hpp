#pragma once

#include "curlwave/kernels.hpp"
#include "curlwave/synthesis.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace curlwave {

struct DecayFit {
    double exponent = std::numeric_limits<double>::quiet_NaN();  ///< minus the fitted slope
    double stderr_ = std::numeric_limits<double>::quiet_NaN();
    bool insufficient = true;  ///< fit not significantly negative (InsufficientDecay)
    std::vector<double> radii, maxima;
};

struct ConvergenceRow {
    double T = 0.0;
    double sup_error = 0.0;
};

struct Diagnostics {
    double residual_max = 0.0;
    double residual_l2 = 0.0;  ///< root mean square over the grid
    double parallel_defect = 0.0;
    double curl_defect = std::numeric_limits<double>::quiet_NaN();
    double periodicity_defect = std::numeric_limits<double>::quiet_NaN();
    std::size_t points_checked = 0;
    std::size_t points_skipped = 0;
    std::optional<DecayFit> spatial_decay, spacetime_decay;
    std::optional<double> support_radius;
    std::optional<double> outside_support_max;
    std::vector<ConvergenceRow> convergence_table;
    std::vector<double> holder_ratios;
    std::optional<double> holder_bound;
    std::map<std::string, bool> pass;
    std::map<std::string, double> thresholds;
    std::map<std::string, std::string> metadata;

    bool all_pass() const;
};

struct ResidualOptions {
    double fd_step = 1e-3;
    double residual_tol = 1e-6;
    double parallel_tol = 1e-10;
    double periodicity_tol = 1e-8;
    ExecMode mode = ExecMode::Parallel;
};

/// Residual of the reduced equation (finite-difference psi''), parallelism of U and
/// the direction field, and the T-periodicity defect for periodic kinds.
Diagnostics ode_residual(const WaveField& field, const Grid& grid, const ResidualOptions& opt = {});
Diagnostics ode_residual(const WaveField& field, const std::vector<Vec3>& points,
                         const std::vector<double>& times, const ResidualOptions& opt = {});

/// Max |curl_h U| / max |U| with the central-difference curl of step h.
double discrete_curl_defect(const WaveField& field, const std::vector<Vec3>& points,
                            const std::vector<double>& times, double h,
                            ExecMode mode = ExecMode::Parallel);
double discrete_curl_defect(const VectorField& U, const std::function<bool(const Vec3&)>& avoid,
                            const std::vector<Vec3>& points, const std::vector<double>& times,
                            double h, ExecMode mode = ExecMode::Parallel);

/// Observed order log2(defect(h) / defect(h/2)).
struct CurlOrder {
    double coarse = 0.0, fine = 0.0, order = 0.0;
};
CurlOrder curl_order(const WaveField& field, const std::vector<Vec3>& points,
                     const std::vector<double>& times, double h);

enum class DecayMode { Spatial, Spacetime };

struct DecayOptions {
    std::vector<double> radii;     ///< shells; >= 4 required
    int directions = 200;          ///< points per sphere
    std::vector<double> times{0.0};  ///< spatial mode: sampled times
    int lambda_steps = 20;         ///< spacetime mode: split |x| = l rho, |t| = (1-l) rho
    std::uint64_t seed = 1;        ///< rotates the sphere lattice per shell
};

/// Least-squares slope of log max_shell |U - U_inf| against the shell radius.
DecayFit decay_fit(const WaveField& field, DecayMode mode, const DecayOptions& opt);
/// Shells evenly spaced in [0.3 R, 0.9 R].
std::vector<double> default_shells(double R, int count = 8);

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
    bool strictly_decreasing = false;
};
/// sup over the grid of |U_T - U_0| for each T (U_0 unshifted rogue wave).
ConvergenceReport convergence_check(double p, const GeometryProfile& geo,
                                    const CoefficientProfiles& coeffs, const std::vector<double>& T_list,
                                    const std::vector<Vec3>& points, const std::vector<double>& times,
                                    ExecMode mode = ExecMode::Parallel);

struct HolderReport {
    std::vector<double> ratios;  ///< ||y(.,c1) - y(.,c2)||_inf / sqrt|c1 - c2|, 0 when c1 = c2
    double H = 0.0;              ///< sampled Hoelder constant of a^{-1}
    double C_T = 0.0;            ///< H exp(T (2 + p(p+1)/2) / 2)
    bool pass = false;
};
/// Sampled Hoelder constant of a^{-1} over a fixed quadratic grid of levels plus `pairs`.
double holder_constant_a_inverse(double p, const std::vector<std::pair<double, double>>& pairs);
HolderReport holder_check(double p, double T, const std::vector<std::pair<double, double>>& pairs,
                          int time_points = 2001);

/// max |U| over grid points with |x| >= rho (should be exactly zero for compact support).
double max_outside_ball(const WaveField& field, const std::vector<Vec3>& points,
                        const std::vector<double>& times, double rho,
                        ExecMode mode = ExecMode::Parallel);

/// The field multiplied by `factor`; used as a negative control.
WaveField corrupt_scale(const WaveField& field, double factor);

}  // namespace curlwave
