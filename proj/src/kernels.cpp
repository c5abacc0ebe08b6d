#include "curlwave/kernels.hpp"

#include "curlwave/errors.hpp"

#include <omp.h>

#include <cmath>
#include <complex>
#include <limits>

namespace curlwave {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

// a NaN at a regular point is a failure, not a skipped sample
double flag_nan(double v) { return std::isnan(v) ? std::numeric_limits<double>::infinity() : v; }

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

std::complex<double> project(const FieldValue& u, const Vec3& d) {
    return {dot(u.re, d), dot(u.im, d)};
}

// sign pattern (e1, e2) of s psi'' + e1 q psi + e2 V |psi|^{p-1} psi
std::pair<double, double> signs(Variant v) {
    switch (v) {
        case Variant::PlusFocusing: return {1.0, 1.0};
        case Variant::MinusDefocusing: return {1.0, -1.0};
        case Variant::Rogue: return {-1.0, 1.0};
    }
    return {0.0, 0.0};
}

}  // namespace

std::vector<Vec3> Grid::points() const {
    validate();
    std::vector<Vec3> pts;
    pts.reserve(static_cast<std::size_t>(resolution) * resolution * resolution);
    const double step = 2.0 * extent / (resolution - 1);
    for (int i = 0; i < resolution; ++i)
        for (int j = 0; j < resolution; ++j)
            for (int k = 0; k < resolution; ++k)
                pts.push_back({-extent + i * step, -extent + j * step, -extent + k * step});
    return pts;
}

std::vector<double> Grid::times() const {
    validate();
    std::vector<double> ts(t_samples);
    for (int i = 0; i < t_samples; ++i)
        ts[i] = t_samples == 1 ? t_min : t_min + (t_max - t_min) * i / (t_samples - 1);
    return ts;
}

std::size_t Grid::size() const {
    return static_cast<std::size_t>(resolution) * resolution * resolution * t_samples;
}

void Grid::validate() const {
    if (resolution < 2) throw DomainError("grid resolution must be at least 2 per axis");
    if (t_samples < 1) throw DomainError("grid needs at least one time sample");
    if (!(extent > 0.0)) throw DomainError("grid extent must be positive");
    if (!(t_max >= t_min)) throw DomainError("grid time range is reversed");
}

void set_threads(int n) {
    if (n > 0) omp_set_num_threads(n);
}

int max_threads() { return omp_get_max_threads(); }

void for_each_index(std::size_t n, ExecMode mode, const std::function<void(std::size_t)>& body) {
    if (mode == ExecMode::Serial) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::exception_ptr first;
    std::mutex guard;
    const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 8)
    for (long i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard lock(guard);
            if (!first) first = std::current_exception();
        }
    }
    if (first) std::rethrow_exception(first);
}

FieldSamples sample_field(const WaveField& field, const std::vector<Vec3>& points,
                          const std::vector<double>& times, ExecMode mode) {
    FieldSamples out;
    out.points = points;
    out.times = times;
    const std::size_t nt = times.size();
    out.values.resize(points.size() * nt);
    out.singular.resize(points.size());
    const auto& geo = field.geometry();
    for_each_index(points.size(), mode, [&](std::size_t i) {
        if (geo.singular(points[i])) {
            out.singular[i] = 1;
            for (std::size_t j = 0; j < nt; ++j) {
                auto& v = out.values[i * nt + j];
                v.re = {nan, nan, nan};
                v.im = {nan, nan, nan};
            }
            return;
        }
        for (std::size_t j = 0; j < nt; ++j) out.values[i * nt + j] = field(points[i], times[j]);
    });
    return out;
}

std::vector<double> residual_kernel(const WaveField& field, const std::vector<Vec3>& points,
                                    const std::vector<double>& times, double h, ExecMode mode) {
    const std::size_t nt = times.size();
    std::vector<double> out(points.size() * nt, nan);
    const auto& geo = field.geometry();
    const auto& c = field.coefficients();
    const double p = field.p();
    const auto [e1, e2] = signs(field.equation());
    for_each_index(points.size(), mode, [&](std::size_t i) {
        const Vec3& x = points[i];
        if (geo.singular(x)) return;
        const Vec3 dir = eval_direction(geo, x);
        const double z = geo.g(x);
        const double s = c.s(z), q = c.q(z), V = c.V(z);
        auto psi = [&](double t) { return project(field(x, t), dir); };
        for (std::size_t j = 0; j < nt; ++j) {
            const double t = times[j];
            const auto f0 = psi(t);
            const auto d2 = (-psi(t + 2 * h) + 16.0 * psi(t + h) - 30.0 * f0 + 16.0 * psi(t - h) -
                             psi(t - 2 * h)) /
                            (12.0 * h * h);
            const double mod = std::abs(f0);
            const auto nl = mod > 0.0 ? std::pow(mod, p - 1.0) * f0 : std::complex<double>(0.0);
            out[i * nt + j] = flag_nan(std::abs(s * d2 + e1 * q * f0 + e2 * V * nl));
        }
    });
    return out;
}

std::vector<double> parallelism_kernel(const WaveField& field, const std::vector<Vec3>& points,
                                       const std::vector<double>& times, ExecMode mode) {
    const std::size_t nt = times.size();
    std::vector<double> out(points.size() * nt, nan);
    const auto& geo = field.geometry();
    for_each_index(points.size(), mode, [&](std::size_t i) {
        const Vec3& x = points[i];
        if (geo.singular(x)) return;
        const Vec3 dir = eval_direction(geo, x);
        for (std::size_t j = 0; j < nt; ++j) {
            const auto u = field(x, times[j]);
            const double a = norm(cross(u.re, dir)), b = norm(cross(u.im, dir));
            out[i * nt + j] = flag_nan(std::hypot(a, b));
        }
    });
    return out;
}

std::vector<double> periodicity_kernel(const WaveField& field, const std::vector<Vec3>& points,
                                       const std::vector<double>& times, ExecMode mode) {
    const std::size_t nt = times.size();
    std::vector<double> out(points.size() * nt, nan);
    if (!field.periodic()) return out;
    const double T = field.period();
    const auto& geo = field.geometry();
    for_each_index(points.size(), mode, [&](std::size_t i) {
        const Vec3& x = points[i];
        if (geo.singular(x)) return;
        for (std::size_t j = 0; j < nt; ++j) {
            const auto a = field(x, times[j]), b = field(x, times[j] + T);
            double d2 = 0.0;
            for (int k = 0; k < 3; ++k) {
                d2 += (a.re[k] - b.re[k]) * (a.re[k] - b.re[k]);
                d2 += (a.im[k] - b.im[k]) * (a.im[k] - b.im[k]);
            }
            out[i * nt + j] = flag_nan(std::sqrt(d2));
        }
    });
    return out;
}

std::vector<double> curl_kernel(const VectorField& U, const std::function<bool(const Vec3&)>& avoid,
                                const std::vector<Vec3>& points, const std::vector<double>& times,
                                double h, ExecMode mode) {
    const std::size_t nt = times.size();
    std::vector<double> out(points.size() * nt, nan);
    for_each_index(points.size(), mode, [&](std::size_t i) {
        const Vec3& x = points[i];
        std::array<Vec3, 6> st;
        for (int a = 0; a < 3; ++a) {
            st[2 * a] = x;
            st[2 * a + 1] = x;
            st[2 * a][a] += h;
            st[2 * a + 1][a] -= h;
        }
        if (avoid && avoid(x)) return;
        for (const auto& y : st)
            if (avoid && avoid(y)) return;
        for (std::size_t j = 0; j < nt; ++j) {
            std::array<FieldValue, 6> v;
            for (int k = 0; k < 6; ++k) v[k] = U(st[k], times[j]);
            // D[a][b] = d U_b / d x_a
            auto curl_of = [&](bool imag) {
                auto comp = [&](int a, int b) {
                    const auto& plus = imag ? v[2 * a].im : v[2 * a].re;
                    const auto& minus = imag ? v[2 * a + 1].im : v[2 * a + 1].re;
                    return (plus[b] - minus[b]) / (2.0 * h);
                };
                return Vec3{comp(1, 2) - comp(2, 1), comp(2, 0) - comp(0, 2),
                            comp(0, 1) - comp(1, 0)};
            };
            out[i * nt + j] = flag_nan(std::hypot(norm(curl_of(false)), norm(curl_of(true))));
        }
    });
    return out;
}

Reduction reduce(const std::vector<double>& values) {
    Reduction r;
    double sum = 0.0;
    for (double v : values) {
        if (std::isnan(v)) {
            ++r.skipped;
            continue;
        }
        r.max = std::max(r.max, v);
        sum += v * v;
        ++r.count;
    }
    r.rms = r.count ? std::sqrt(sum / r.count) : 0.0;
    return r;
}

}  // namespace curlwave
