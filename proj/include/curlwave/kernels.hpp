#pragma once

#include "curlwave/synthesis.hpp"

#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <vector>

namespace curlwave {

/// Tensor grid [-extent, extent]^3 x [t_min, t_max].
struct Grid {
    double extent = 4.0;
    int resolution = 9;  ///< points per spatial axis, >= 2
    double t_min = 0.0;
    double t_max = 1.0;
    int t_samples = 8;   ///< >= 1; a single sample sits at t_min

    std::vector<Vec3> points() const;
    std::vector<double> times() const;
    std::size_t size() const;
    void validate() const;
};

enum class ExecMode { Serial, Parallel };

/// Thread count for Parallel mode (<= 0 leaves the OpenMP default).
void set_threads(int n);
int max_threads();

/// Runs body(i) for i in [0, n). Parallel mode uses an OpenMP loop; every index
/// writes only its own output slot, so results do not depend on the thread count.
/// The first exception thrown by any iteration is rethrown after the loop.
void for_each_index(std::size_t n, ExecMode mode, const std::function<void(std::size_t)>& body);

/// Field values on points x times, index = point * times.size() + time.
struct FieldSamples {
    std::vector<Vec3> points;
    std::vector<double> times;
    std::vector<FieldValue> values;
    std::vector<std::uint8_t> singular;  ///< per point
};
FieldSamples sample_field(const WaveField& field, const std::vector<Vec3>& points,
                          const std::vector<double>& times, ExecMode mode);

using VectorField = std::function<FieldValue(const Vec3&, double)>;

/// Pointwise residual of s psi'' + e1 q psi + e2 V |psi|^{p-1} psi with psi = U . direction
/// and psi'' from the 5-point central difference at step h. NaN at singular points.
std::vector<double> residual_kernel(const WaveField& field, const std::vector<Vec3>& points,
                                    const std::vector<double>& times, double h, ExecMode mode);

/// |U x direction| per (point, time); NaN at singular points.
std::vector<double> parallelism_kernel(const WaveField& field, const std::vector<Vec3>& points,
                                       const std::vector<double>& times, ExecMode mode);

/// |U(x, t+T) - U(x, t)| per (point, time); NaN at singular points.
std::vector<double> periodicity_kernel(const WaveField& field, const std::vector<Vec3>& points,
                                       const std::vector<double>& times, ExecMode mode);

/// |central-difference curl of U| per (point, time); NaN when the stencil
/// touches the singular set (`avoid` returns true).
std::vector<double> curl_kernel(const VectorField& U, const std::function<bool(const Vec3&)>& avoid,
                                const std::vector<Vec3>& points, const std::vector<double>& times,
                                double h, ExecMode mode);

/// Max and root-mean-square over the finite entries, summed in index order.
struct Reduction {
    double max = 0.0;
    double rms = 0.0;
    std::size_t count = 0;
    std::size_t skipped = 0;
};
Reduction reduce(const std::vector<double>& values);

}  // namespace curlwave
