#include "curlwave/verification.hpp"

#include "curlwave/errors.hpp"
#include "curlwave/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace curlwave {

bool Diagnostics::all_pass() const {
    for (const auto& [name, ok] : pass)
        if (!ok) return false;
    return true;
}

Diagnostics ode_residual(const WaveField& field, const Grid& grid, const ResidualOptions& opt) {
    return ode_residual(field, grid.points(), grid.times(), opt);
}

Diagnostics ode_residual(const WaveField& field, const std::vector<Vec3>& points,
                         const std::vector<double>& times, const ResidualOptions& opt) {
    Diagnostics d;
    const auto res = reduce(residual_kernel(field, points, times, opt.fd_step, opt.mode));
    const auto par = reduce(parallelism_kernel(field, points, times, opt.mode));
    d.residual_max = res.max;
    d.residual_l2 = res.rms;
    d.parallel_defect = par.max;
    d.points_checked = res.count;
    d.points_skipped = res.skipped;
    d.thresholds["residual"] = opt.residual_tol;
    d.thresholds["parallelism"] = opt.parallel_tol;
    d.pass["residual"] = res.count > 0 && res.max <= opt.residual_tol;
    d.pass["parallelism"] = par.count > 0 && par.max <= opt.parallel_tol;
    if (field.periodic()) {
        const auto per = reduce(periodicity_kernel(field, points, times, opt.mode));
        d.periodicity_defect = per.max;
        d.thresholds["periodicity"] = opt.periodicity_tol;
        d.pass["periodicity"] = per.max <= opt.periodicity_tol;
    }
    d.metadata["kind"] = to_string(field.kind());
    d.metadata["equation"] = to_string(field.equation());
    return d;
}

double discrete_curl_defect(const VectorField& U, const std::function<bool(const Vec3&)>& avoid,
                            const std::vector<Vec3>& points, const std::vector<double>& times,
                            double h, ExecMode mode) {
    const auto curl = reduce(curl_kernel(U, avoid, points, times, h, mode));
    // normalisation over the same regular points
    std::vector<double> mags(points.size() * times.size(), std::numeric_limits<double>::quiet_NaN());
    const std::size_t nt = times.size();
    for_each_index(points.size(), mode, [&](std::size_t i) {
        if (avoid && avoid(points[i])) return;
        for (std::size_t j = 0; j < nt; ++j) {
            const auto v = U(points[i], times[j]);
            mags[i * nt + j] = std::hypot(norm(v.re), norm(v.im));
        }
    });
    const double scale = reduce(mags).max;
    if (!(scale > 0.0)) return 0.0;
    return curl.max / scale;
}

double discrete_curl_defect(const WaveField& field, const std::vector<Vec3>& points,
                            const std::vector<double>& times, double h, ExecMode mode) {
    const auto& geo = field.geometry();
    // keep the stencil a few steps away from the singular set and kinks
    auto avoid = [&geo, h](const Vec3& x) {
        if (geo.singular(x)) return true;
        for (int a = 0; a < 3; ++a)
            for (double s : {-2.0, 2.0}) {
                Vec3 y = x;
                y[a] += s * h;
                if (geo.singular(y)) return true;
            }
        return false;
    };
    auto U = [&field](const Vec3& x, double t) { return field(x, t); };
    return discrete_curl_defect(U, avoid, points, times, h, mode);
}

CurlOrder curl_order(const WaveField& field, const std::vector<Vec3>& points,
                     const std::vector<double>& times, double h) {
    CurlOrder o;
    o.coarse = discrete_curl_defect(field, points, times, h);
    o.fine = discrete_curl_defect(field, points, times, 0.5 * h);
    o.order = std::log2(o.coarse / o.fine);
    return o;
}

std::vector<double> default_shells(double R, int count) {
    std::vector<double> r(count);
    for (int i = 0; i < count; ++i) r[i] = R * (0.3 + 0.6 * i / (count - 1));
    return r;
}

DecayFit decay_fit(const WaveField& field, DecayMode mode, const DecayOptions& opt) {
    if (opt.radii.size() < 4) throw DomainError("decay_fit needs at least 4 shells");
    DecayFit fit;
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> twist(0.0, 2.0 * std::numbers::pi);
    const auto ref = field.reference();
    auto diff = [&](const Vec3& x, double t) {
        auto u = field(x, t);
        if (ref) {
            const auto b = (*ref)(x, t);
            for (int k = 0; k < 3; ++k) {
                u.re[k] -= b.re[k];
                u.im[k] -= b.im[k];
            }
        }
        return std::hypot(norm(u.re), norm(u.im));
    };
    const auto& geo = field.geometry();
    for (double rho : opt.radii) {
        const auto dirs = fibonacci_sphere(opt.directions, twist(rng));
        // each direction owns its slot; the max is taken afterwards in order
        std::vector<double> best(dirs.size(), 0.0);
        for_each_index(dirs.size(), ExecMode::Parallel, [&](std::size_t i) {
            double m = 0.0;
            const auto& d = dirs[i];
            if (mode == DecayMode::Spatial) {
                const Vec3 x{rho * d[0], rho * d[1], rho * d[2]};
                if (geo.singular(x)) return;
                for (double t : opt.times) m = std::max(m, diff(x, t));
            } else {
                for (int l = 0; l <= opt.lambda_steps; ++l) {
                    const double lam = static_cast<double>(l) / opt.lambda_steps;
                    const Vec3 x{lam * rho * d[0], lam * rho * d[1], lam * rho * d[2]};
                    if (geo.singular(x)) continue;
                    const double t = (1.0 - lam) * rho;
                    m = std::max({m, diff(x, t), diff(x, -t)});
                }
            }
            best[i] = m;
        });
        double m = 0.0;
        for (double v : best) m = std::max(m, v);
        fit.radii.push_back(rho);
        fit.maxima.push_back(m);
    }
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < fit.radii.size(); ++i)
        if (fit.maxima[i] > 0.0 && std::isfinite(fit.maxima[i])) {
            xs.push_back(fit.radii[i]);
            ys.push_back(std::log(fit.maxima[i]));
        }
    const std::size_t n = xs.size();
    if (n < 3) return fit;
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    const double slope = sxy / sxx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ys[i] - (my + slope * (xs[i] - mx));
        ssr += r * r;
    }
    const double se = std::sqrt(ssr / (n - 2) / sxx);
    fit.exponent = -slope;
    fit.stderr_ = se;
    fit.insufficient = !(slope + 2.0 * se < 0.0);
    return fit;
}

ConvergenceReport convergence_check(double p, const GeometryProfile& geo,
                                    const CoefficientProfiles& coeffs, const std::vector<double>& T_list,
                                    const std::vector<Vec3>& points, const std::vector<double>& times,
                                    ExecMode mode) {
    ConvergenceReport rep;
    SynthesisOptions so;
    so.sample = points;
    std::erase_if(so.sample, [&geo](const Vec3& x) { return geo.singular(x); });
    const auto u0 = synth_rogue(p, geo, coeffs, nullptr, so);
    const std::size_t nt = times.size();
    for (double T : T_list) {
        const auto uT = synth_rogue_approximant(p, geo, coeffs, T, so);
        std::vector<double> err(points.size() * nt, std::numeric_limits<double>::quiet_NaN());
        for_each_index(points.size(), mode, [&](std::size_t i) {
            if (geo.singular(points[i])) return;
            for (std::size_t j = 0; j < nt; ++j) {
                const auto a = uT(points[i], times[j]), b = u0(points[i], times[j]);
                err[i * nt + j] = std::sqrt(std::pow(a.re[0] - b.re[0], 2) +
                                            std::pow(a.re[1] - b.re[1], 2) +
                                            std::pow(a.re[2] - b.re[2], 2));
            }
        });
        rep.rows.push_back({T, reduce(err).max});
    }
    rep.strictly_decreasing = !rep.rows.empty();
    for (std::size_t i = 1; i < rep.rows.size(); ++i)
        rep.strictly_decreasing = rep.strictly_decreasing && rep.rows[i].sup_error < rep.rows[i - 1].sup_error;
    return rep;
}

double holder_constant_a_inverse(double p, const std::vector<std::pair<double, double>>& pairs) {
    const double cmin = potential::rogue_c_min(p);
    double H = 0.0;
    auto quotient = [&](double c1, double c2) {
        if (c1 == c2) return;
        const double dy = std::abs(potential::a_inverse(p, c1) - potential::a_inverse(p, c2));
        H = std::max(H, dy / std::sqrt(std::abs(c1 - c2)));
    };
    // a^{-1} behaves like a square root at the centre level, so refine there
    constexpr int n = 64;
    std::vector<double> grid(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double u = static_cast<double>(i) / n;
        grid[i] = cmin * (1.0 - u * u);
    }
    for (int i = 0; i < n; ++i) {
        quotient(grid[i], grid[i + 1]);
        quotient(cmin, grid[i + 1]);
    }
    for (const auto& [a, b] : pairs) quotient(a, b);
    return H;
}

HolderReport holder_check(double p, double T, const std::vector<std::pair<double, double>>& pairs,
                          int time_points) {
    const double cmin = potential::rogue_c_min(p);
    for (const auto& [a, b] : pairs)
        if (!(a >= cmin && a <= 0.0 && b >= cmin && b <= 0.0))
            throw DomainError("holder_check: levels must lie in [(1-p)/(1+p), 0]");
    HolderReport rep;
    rep.H = holder_constant_a_inverse(p, pairs);
    rep.C_T = rep.H * std::exp(T * (2.0 + p * (p + 1.0) / 2.0) / 2.0);
    OrbitCache cache;
    auto orbit = [&](double c) {
        const OdeCase ode{Variant::Rogue, p};
        return cache.get(ode, {potential::a_inverse(p, c), 0.0},
                         [&] { return normalized_small_orbit(p, c); });
    };
    rep.pass = true;
    for (const auto& [c1, c2] : pairs) {
        if (c1 == c2) {
            rep.ratios.push_back(0.0);
            continue;
        }
        const auto y1 = orbit(c1), y2 = orbit(c2);
        double m = 0.0;
        for (int i = 0; i < time_points; ++i) {
            const double t = T * i / (time_points - 1);
            m = std::max(m, std::abs(y1->position(t) - y2->position(t)));
        }
        const double ratio = m / std::sqrt(std::abs(c1 - c2));
        rep.ratios.push_back(ratio);
        rep.pass = rep.pass && ratio <= rep.C_T;
    }
    return rep;
}

double max_outside_ball(const WaveField& field, const std::vector<Vec3>& points,
                        const std::vector<double>& times, double rho, ExecMode mode) {
    const std::size_t nt = times.size();
    std::vector<double> mags(points.size() * nt, std::numeric_limits<double>::quiet_NaN());
    const auto& geo = field.geometry();
    for_each_index(points.size(), mode, [&](std::size_t i) {
        if (norm(points[i]) < rho || geo.singular(points[i])) return;
        for (std::size_t j = 0; j < nt; ++j) {
            const auto v = field(points[i], times[j]);
            mags[i * nt + j] = std::hypot(norm(v.re), norm(v.im));
        }
    });
    return reduce(mags).max;
}

WaveField corrupt_scale(const WaveField& field, double factor) { return field.scaled(factor); }

}  // namespace curlwave
