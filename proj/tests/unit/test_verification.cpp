#include <doctest.h>

#include "curlwave/errors.hpp"
#include "curlwave/potential.hpp"
#include "curlwave/verification.hpp"

#include <cmath>
#include <random>

using namespace curlwave;

namespace {
const std::vector<Var> Z{Var::Zeta};
const auto torus = GeometryProfile::torus(0);

CoefficientProfiles rogue_coeffs() {
    auto c = CoefficientProfiles::from_expressions(Expression::parse("1", Z), Expression::parse("1", Z),
                                                   Expression::parse("exp(zeta)", Z));
    c.delta = 0.5;
    return c;
}

Grid grid(int res, double t0, double t1, int nt) {
    Grid g;
    g.extent = 2.5;
    g.resolution = res;
    g.t_min = t0;
    g.t_max = t1;
    g.t_samples = nt;
    return g;
}
}  // namespace

TEST_CASE("residuals of the equilibrium, the explicit rogue wave and a corrupted field") {
    const auto dc = synth_dark_constant(3, torus, CoefficientProfiles::constant(1, 1, 1));
    CHECK(ode_residual(dc, grid(4, 0, 1, 3)).residual_max <= 1e-10);
    const auto ex = synth_explicit_rogue(3, torus, rogue_coeffs());
    const auto g = grid(5, -2, 2, 9);
    CHECK(ode_residual(ex, g).residual_max <= 1e-8);
    CHECK(ode_residual(corrupt_scale(ex, 1.01), g).residual_max > 1e-3);
}

TEST_CASE("property: the residual converges at second order in the time step") {
    const auto f = synth_rogue(3, torus, rogue_coeffs());
    const std::vector<Vec3> pts{{0.5, 0.2, 0.1}, {1.0, -0.4, 0.3}};
    const std::vector<double> ts{0.3, 0.9};
    ResidualOptions coarse, fine;
    coarse.fd_step = 0.04;
    fine.fd_step = 0.02;
    const double a = ode_residual(f, pts, ts, coarse).residual_max;
    const double b = ode_residual(f, pts, ts, fine).residual_max;
    CHECK(std::log2(a / b) >= 1.9);
}

TEST_CASE("curl of gradient fields vanishes to second order, non-gradient control does not") {
    const auto f = synth_rogue(3, torus, rogue_coeffs());
    std::vector<Vec3> pts;
    for (const auto& x : grid(4, 0, 0, 1).points())
        if (norm(x) > 0.3) pts.push_back(x);
    const auto ord = curl_order(f, pts, {0.2}, 0.02);
    CHECK(ord.order >= 1.9);
    CHECK(discrete_curl_defect(f, pts, {0.2}, 1e-3) <= 1e-4);

    // constant direction field of the cone family, psi constant in space
    const VectorField constant = [](const Vec3&, double) {
        FieldValue v;
        v.re = {1 / std::sqrt(2.0), 0.0, 1 / std::sqrt(2.0)};
        return v;
    };
    CHECK(discrete_curl_defect(constant, nullptr, pts, {0.0}, 1e-3) <= 1e-12);

    const VectorField swirl = [](const Vec3& x, double) {
        FieldValue v;
        const double r = std::hypot(x[0], x[1]);
        v.re = {-x[1] / r, x[0] / r, 0.0};
        return v;
    };
    const auto axis = [](const Vec3& x) { return std::hypot(x[0], x[1]) < 0.1; };
    CHECK(discrete_curl_defect(swirl, axis, pts, {0.0}, 1e-3) > 0.1);
}

TEST_CASE("decay fits of the explicit rogue wave") {
    const auto f = synth_explicit_rogue(3, torus, rogue_coeffs());
    DecayOptions opt;
    opt.radii = default_shells(10);
    opt.times = {0.0, 0.5};
    const auto s = decay_fit(f, DecayMode::Spatial, opt);
    CHECK_FALSE(s.insufficient);
    CHECK(std::abs(s.exponent - 0.5) <= 0.02);
    const auto st = decay_fit(f, DecayMode::Spacetime, opt);
    CHECK(st.exponent >= 0.45);
    CHECK_THROWS(decay_fit(f, DecayMode::Spatial, DecayOptions{{1, 2, 3}}));
}

TEST_CASE("dark breather decays towards its background") {
    const std::vector<Var> z{Var::Zeta};
    auto c = CoefficientProfiles::from_expressions(
        Expression::parse("1", z), Expression::parse("(1 + exp(-zeta^2))^2", z),
        Expression::parse("(1 + exp(-zeta^2))^2 / (1 + 2*exp(-zeta^2))^2", z));
    c.sigma_inf = 1.0;
    c.tau_inf = 1.0;
    c.delta = 2.0;
    const auto f = synth_dark_breather(3, torus, c, std::sqrt(2.0));
    DecayOptions opt;
    opt.radii = default_shells(6);
    opt.directions = 60;
    opt.times = {0.0, 1.1, 2.2, 3.3};
    const auto fit = decay_fit(f, DecayMode::Spatial, opt);
    CHECK_FALSE(fit.insufficient);
    CHECK(fit.exponent + 2 * fit.stderr_ >= 1.0);
}

TEST_CASE("convergence table") {
    const std::vector<Var> z{Var::Zeta};
    const auto c = CoefficientProfiles::from_expressions(Expression::parse("4", z),
                                                         Expression::parse("1 + 0.4*exp(-zeta^2)", z),
                                                         Expression::parse("exp(zeta)", z));
    const auto g = grid(4, -2, 2, 5);
    const auto rep = convergence_check(3, torus, c, {10, 20, 40}, g.points(), g.times());
    REQUIRE(rep.rows.size() == 3);
    CHECK(rep.strictly_decreasing);
    const auto one = convergence_check(3, torus, c, {15}, g.points(), g.times());
    CHECK(one.rows.size() == 1);
}

TEST_CASE("Hoelder check") {
    const auto same = holder_check(3, 5, {{-0.3, -0.3}});
    CHECK(same.ratios.at(0) == 0.0);
    std::vector<std::pair<double, double>> straddle{{-0.5, -0.499}, {-0.5, -0.45}, {-0.49, -0.5}};
    const auto r = holder_check(3, 5, straddle);
    CHECK(r.pass);
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-1.0 / 3.0, 0.0);
    std::vector<std::pair<double, double>> pairs;
    for (int i = 0; i < 50; ++i) pairs.emplace_back(u(rng), u(rng));
    CHECK(holder_check(2, 10, pairs).pass);
}

TEST_CASE("compact support outside the computed ball") {
    auto c = CoefficientProfiles::from_expressions(
        Expression::parse("1", Z), Expression::parse("(1 - 0.5*max(0, 1 - zeta^2/4)^2)^2", Z),
        Expression::parse("1", Z));
    c.sigma_inf = 1.0;
    const auto f = synth_breather(1, 3, torus, c);
    const double rho = torus.support_radius(2.0);
    Grid g = grid(7, 0, 3, 3);
    g.extent = 2 * rho;
    CHECK(max_outside_ball(f, g.points(), g.times(), rho) == 0.0);
    CHECK(max_outside_ball(f, g.points(), g.times(), 0.5) > 0.0);
}

TEST_CASE("all_pass aggregates flags") {
    Diagnostics d;
    CHECK(d.all_pass());
    d.pass["a"] = true;
    d.pass["b"] = false;
    CHECK_FALSE(d.all_pass());
}
