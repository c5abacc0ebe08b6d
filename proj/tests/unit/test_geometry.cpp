#include <doctest.h>

#include "curlwave/errors.hpp"
#include "curlwave/geometry.hpp"

#include <cmath>
#include <random>

using namespace curlwave;

namespace {
const std::vector<Var> space{Var::X1, Var::X2, Var::X3, Var::R};
const std::vector<Var> zeta{Var::Zeta};

// central-difference gradient of g, independent of the library's own
Vec3 fd_grad(const GeometryProfile& geo, const Vec3& x, double h = 1e-6) {
    Vec3 out{};
    for (int k = 0; k < 3; ++k) {
        Vec3 a = x, b = x;
        a[k] += h;
        b[k] -= h;
        out[k] = (geo.g(a) - geo.g(b)) / (2 * h);
    }
    return out;
}

std::vector<Vec3> random_points(int n, double radius, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-radius, radius);
    std::vector<Vec3> pts;
    while (static_cast<int>(pts.size()) < n) pts.push_back({u(rng), u(rng), u(rng)});
    return pts;
}
}  // namespace

TEST_CASE("directions at the documented points") {
    const auto d = eval_direction(GeometryProfile::torus(0), {1, 0, 0});
    CHECK(d[0] == doctest::Approx(1));
    CHECK(d[1] == 0);
    CHECK(d[2] == 0);
    const auto c = eval_direction(GeometryProfile::cone_abs_axial(1, 0), {2, 0, 1});
    CHECK(c[0] == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(c[2] == doctest::Approx(1 / std::sqrt(2.0)));
    const auto t = eval_direction(GeometryProfile::torus(1), {2, 0, 0});
    CHECK(t[0] == doctest::Approx(1));
    CHECK_THROWS_AS(eval_direction(GeometryProfile::torus(0), {0, 0, 0}), SingularPoint);
    CHECK_THROWS_AS(eval_direction(GeometryProfile::torus(1), {1, 0, 0}), SingularPoint);
}

TEST_CASE("property: analytic gradients match finite differences and directions are unit") {
    const std::vector<GeometryProfile> geos{
        GeometryProfile::torus(0),          GeometryProfile::torus(1.5),
        GeometryProfile::cone_axial(2, 0),  GeometryProfile::cone_axial(0.5, 1),
        GeometryProfile::cone_abs_axial(1, 0), GeometryProfile::cone_abs_axial(3, 0.5)};
    for (const auto& geo : geos) {
        for (const auto& x : random_points(300, 4, 3)) {
            if (geo.singular(x)) continue;
            // keep away from kinks so the finite-difference oracle is valid
            if (std::abs(x[2]) < 1e-3 || std::abs(std::hypot(x[0], x[1]) - geo.r0()) < 1e-3) continue;
            const auto a = geo.grad_g(x);
            const auto b = fd_grad(geo, x);
            for (int k = 0; k < 3; ++k) CHECK(std::abs(a[k] - b[k]) < 1e-6);
            CHECK(std::abs(norm(eval_direction(geo, x)) - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("compatibility of the built-in families") {
    const auto sample = random_points(500, 5, 9);
    CHECK(check_compatibility(GeometryProfile::torus(0), sample).pass);
    CHECK(check_compatibility(GeometryProfile::torus(2), sample).max_defect < 1e-12);
    const auto cone = GeometryProfile::cone_axial(2, 0);
    const auto rep = check_compatibility(cone, sample);
    CHECK(rep.pass);
    CHECK(rep.max_defect < 1e-12);
    CHECK(cone.G(0.3) == doctest::Approx(std::sqrt(5.0)));
}

TEST_CASE("custom g = x1^2 with G = 2 sqrt(zeta)") {
    const auto geo = GeometryProfile::custom(Expression::parse("x1^2", space), Expression::parse("2*sqrt(zeta)", zeta));
    std::vector<Vec3> sample;
    for (const auto& x : random_points(200, 3, 4))
        if (x[0] > 0.1) sample.push_back(x);
    const auto rep = check_compatibility(geo, sample);
    CHECK(rep.pass);
    const auto wrong = GeometryProfile::custom(Expression::parse("x1^2", space), Expression::parse("sqrt(zeta)", zeta));
    CHECK_FALSE(check_compatibility(wrong, sample).pass);
}

TEST_CASE("accumulation set probe") {
    const std::vector<double> radii{10, 20, 40, 80};
    CHECK(accumulation_set_probe(GeometryProfile::torus(1), radii).classification == AccumulationClass::Empty);
    CHECK(accumulation_set_probe(GeometryProfile::torus(0), radii).classification == AccumulationClass::Empty);
    CHECK(accumulation_set_probe(GeometryProfile::cone_axial(1), radii).classification == AccumulationClass::All);
}

TEST_CASE("support radius bounds g from below") {
    for (const auto& geo : {GeometryProfile::torus(0), GeometryProfile::torus(1.2),
                            GeometryProfile::cone_abs_axial(0.5, 1), GeometryProfile::cone_abs_axial(2, 0.3)}) {
        const double R = 2.0;
        const double rho = geo.support_radius(R);
        for (const auto& u : fibonacci_sphere(2000, 0.1)) {
            const Vec3 x{rho * u[0], rho * u[1], rho * u[2]};
            CHECK(geo.g(x) >= R - 1e-12);
        }
    }
}

TEST_CASE("coefficient conditions") {
    auto coeffs = CoefficientProfiles::from_expressions(Expression::parse("1", zeta),
                                                        Expression::parse("(1 - 0.5*exp(-zeta^2))^2", zeta),
                                                        Expression::parse("1", zeta));
    coeffs.sigma_inf = 1.0;
    coeffs.delta = 1.0;
    std::vector<Vec3> sample;
    for (double r = 0.25; r <= 10; r += 0.25) sample.push_back({r, 0, 0});
    const auto rep = evaluate_conditions(GeometryProfile::torus(0), coeffs, 3, sample);
    CHECK(rep.positive);
    CHECK(rep.b1);
    CHECK(rep.b2);
    CHECK_FALSE(rep.b2_prime);
    CHECK(rep.b3);
    CHECK(coeffs.sigma(0) == doctest::Approx(0.5));
    CHECK(coeffs.tau(0, 3) == doctest::Approx(0.5));
}
