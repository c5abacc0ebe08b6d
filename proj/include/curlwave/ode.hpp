#pragma once

#include "curlwave/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>

namespace curlwave::ode {

template <std::size_t N>
using State = std::array<double, N>;

struct StepControl {
    double rel_tol = 1e-12;
    double abs_tol = 1e-12;
    double h_init = 1e-3;
    double h_max = 0.05;
    double h_min = 1e-14;
    long max_steps = 5'000'000;
};

/// Accepted step [t0, t1] with states and right-hand sides at both ends.
template <std::size_t N>
struct Step {
    double t0, t1;
    State<N> y0, y1, f0, f1;
};

/// Dormand-Prince 5(4) embedded pair with FSAL and a standard I-controller.
/// rhs(t, y) -> dy/dt. on_step(step) is called after every accepted step and
/// returns false to stop early. Returns the final time reached.
template <std::size_t N, class Rhs, class OnStep>
double dopri5(Rhs&& rhs, double t0, State<N> y, double t_end, const StepControl& ctl,
              OnStep&& on_step) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    const double dir = t_end >= t0 ? 1.0 : -1.0;
    double t = t0;
    double h = std::min(ctl.h_init, ctl.h_max);
    State<N> k1 = rhs(t, y);
    State<N> k2, k3, k4, k5, k6, k7, tmp, ynew;
    long steps = 0;
    while (dir * (t_end - t) > 0.0) {
        if (++steps > ctl.max_steps) throw NonConvergence("dopri5: step budget exhausted");
        h = std::min(h, dir * (t_end - t));
        const double hs = dir * h;
        for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + hs * a21 * k1[i];
        k2 = rhs(t + c2 * hs, tmp);
        for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + hs * (a31 * k1[i] + a32 * k2[i]);
        k3 = rhs(t + c3 * hs, tmp);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + hs * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        k4 = rhs(t + c4 * hs, tmp);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + hs * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        k5 = rhs(t + c5 * hs, tmp);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] +
                     hs * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        k6 = rhs(t + hs, tmp);
        for (std::size_t i = 0; i < N; ++i)
            ynew[i] = y[i] + hs * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        k7 = rhs(t + hs, ynew);

        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double ei = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                    e6 * k6[i] + e7 * k7[i]);
            const double sc =
                ctl.abs_tol + ctl.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            err += (ei / sc) * (ei / sc);
        }
        err = std::sqrt(err / N);
        if (!std::isfinite(err)) {
            h *= 0.2;
            if (h < ctl.h_min) throw NonConvergence("dopri5: non-finite state");
            continue;
        }
        if (err <= 1.0) {
            Step<N> st{t, t + hs, y, ynew, k1, k7};
            t += hs;
            y = ynew;
            k1 = k7;
            const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            h = std::min(h * fac, ctl.h_max);
            if (!on_step(st)) return t;
        } else {
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
            if (h < ctl.h_min)
                throw NonConvergence("dopri5: step size underflow at t=" + std::to_string(t) +
                                     "; tolerance too tight");
        }
    }
    return t;
}

/// Quintic Hermite interpolation on [t0, t1] from value, first and second
/// derivative at both ends. Returns value and first derivative at t.
struct Hermite5 {
    static void eval(double t0, double t1, double y0, double d0, double dd0, double y1, double d1,
                     double dd1, double t, double& value, double& deriv) {
        const double h = t1 - t0;
        const double s = (t - t0) / h;
        const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
        const double h00 = 1 - 10 * s3 + 15 * s4 - 6 * s5;
        const double h10 = s - 6 * s3 + 8 * s4 - 3 * s5;
        const double h20 = 0.5 * s2 - 1.5 * s3 + 1.5 * s4 - 0.5 * s5;
        const double h01 = 10 * s3 - 15 * s4 + 6 * s5;
        const double h11 = -4 * s3 + 7 * s4 - 3 * s5;
        const double h21 = 0.5 * s3 - s4 + 0.5 * s5;
        value = h00 * y0 + h * h10 * d0 + h * h * h20 * dd0 + h01 * y1 + h * h11 * d1 +
                h * h * h21 * dd1;
        const double g00 = -30 * s2 + 60 * s3 - 30 * s4;
        const double g10 = 1 - 18 * s2 + 32 * s3 - 15 * s4;
        const double g20 = s - 4.5 * s2 + 6 * s3 - 2.5 * s4;
        const double g01 = 30 * s2 - 60 * s3 + 30 * s4;
        const double g11 = -12 * s2 + 28 * s3 - 15 * s4;
        const double g21 = 1.5 * s2 - 4 * s3 + 2.5 * s4;
        deriv = (g00 * y0 + h * g10 * d0 + h * h * g20 * dd0 + g01 * y1 + h * g11 * d1 +
                 h * h * g21 * dd1) /
                h;
    }
};

}  // namespace curlwave::ode
